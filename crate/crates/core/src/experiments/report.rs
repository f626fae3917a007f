use serde::Serialize;
use std::collections::BTreeMap;

/// One parameter value of an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub parameter: f64,
    pub measured: f64,
    pub reference: f64,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckKind {
    /// Error-type bound, `value ≤ tol`; scaled by the tolerance scale.
    AtMost { tol: f64 },
    /// Rate bound, `value ≥ min`.
    AtLeast { min: f64 },
    /// Rate window, `lo ≤ value ≤ hi`.
    Within { lo: f64, hi: f64 },
    /// Rate ceiling, `value ≤ max`; not scaled.
    Below { max: f64 },
    /// `value == 0` exactly.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    #[serde(flatten)]
    pub kind: CheckKind,
    pub pass: bool,
}

impl Check {
    fn evaluate(&mut self, scale: f64) {
        let v = self.value;
        self.pass = match self.kind {
            CheckKind::AtMost { tol } => v <= tol * scale,
            CheckKind::AtLeast { min } => v >= min,
            CheckKind::Within { lo, hi } => v >= lo && v <= hi,
            CheckKind::Below { max } => v <= max,
            CheckKind::Zero => v == 0.0,
        };
    }
}

/// Measured values over a parameter grid, fitted rates, and the checks that
/// decide pass or fail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateReport {
    pub experiment: String,
    pub parameter_name: String,
    pub rows: Vec<ReportRow>,
    /// Log-log least-squares slope of the fitted column, when every value is positive.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub checks: Vec<Check>,
    /// Reported quantities that do not affect `pass`.
    pub diagnostics: BTreeMap<String, f64>,
    pub tolerance_scale: f64,
    pub pass: bool,
}

/// Least-squares line through `(ln x, ln y)`. `None` unless there are at
/// least two points and every coordinate is positive and finite.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

impl RateReport {
    pub fn new(experiment: &str, parameter_name: &str) -> Self {
        RateReport {
            experiment: experiment.to_string(),
            parameter_name: parameter_name.to_string(),
            rows: Vec::new(),
            slope: None,
            intercept: None,
            checks: Vec::new(),
            diagnostics: BTreeMap::new(),
            tolerance_scale: 1.0,
            pass: true,
        }
    }

    pub fn row(&mut self, parameter: f64, measured: f64, reference: f64, residual: f64) {
        self.rows.push(ReportRow {
            parameter,
            measured,
            reference,
            residual,
        });
    }

    fn push(&mut self, name: &str, value: f64, kind: CheckKind) {
        let mut c = Check {
            name: name.to_string(),
            value,
            kind,
            pass: false,
        };
        c.evaluate(self.tolerance_scale);
        self.pass &= c.pass;
        self.checks.push(c);
    }

    /// Records a value that is reported but not checked.
    pub fn note(&mut self, name: &str, value: f64) {
        self.diagnostics.insert(name.to_string(), value);
    }

    pub fn at_most(&mut self, name: &str, value: f64, tol: f64) {
        self.push(name, value, CheckKind::AtMost { tol });
    }

    pub fn at_least(&mut self, name: &str, value: f64, min: f64) {
        self.push(name, value, CheckKind::AtLeast { min });
    }

    pub fn within(&mut self, name: &str, value: f64, lo: f64, hi: f64) {
        self.push(name, value, CheckKind::Within { lo, hi });
    }

    pub fn below(&mut self, name: &str, value: f64, max: f64) {
        self.push(name, value, CheckKind::Below { max });
    }

    pub fn zero(&mut self, name: &str, value: f64) {
        self.push(name, value, CheckKind::Zero);
    }

    /// Fits the slope of `ys` against the row parameters and records it as
    /// the report slope. If every value is exactly zero the fit is skipped
    /// and an exact-zero check is recorded instead; a mix of zero and nonzero
    /// values fails.
    pub fn fit(&mut self, name: &str, ys: &[f64], window: CheckKind) -> Option<f64> {
        let xs: Vec<f64> = self.rows.iter().map(|r| r.parameter).collect();
        if ys.iter().all(|y| *y == 0.0) {
            self.zero(&format!("{name} (exact zero)"), 0.0);
            return None;
        }
        match loglog_fit(&xs, ys) {
            Some((slope, intercept)) => {
                self.slope = Some(slope);
                self.intercept = Some(intercept);
                self.push(&format!("{name} slope"), slope, window);
                Some(slope)
            }
            None => {
                self.push(&format!("{name} slope (not fittable)"), f64::NAN, window);
                None
            }
        }
    }

    /// Like [`RateReport::fit`], but residuals that all sit at or below
    /// `floor` are accepted as converged to roundoff instead of being fitted.
    pub fn fit_with_floor(&mut self, name: &str, ys: &[f64], window: CheckKind, floor: f64) -> Option<f64> {
        let top = ys.iter().copied().fold(0.0, f64::max);
        if top > 0.0 && top <= floor {
            self.at_most(&format!("{name} (roundoff)"), top, floor);
            return None;
        }
        self.fit(name, ys, window)
    }

    /// Re-evaluates error-type checks under a new tolerance scale. Rate
    /// windows are unaffected.
    pub fn set_tolerance_scale(&mut self, scale: f64) {
        self.tolerance_scale = scale;
        self.pass = true;
        for c in &mut self.checks {
            c.evaluate(scale);
            self.pass &= c.pass;
        }
    }

    /// Concatenates reports under a common name; passes iff every part does.
    pub fn combine(experiment: &str, parameter_name: &str, parts: Vec<RateReport>) -> RateReport {
        let mut out = RateReport::new(experiment, parameter_name);
        for p in parts {
            out.rows.extend(p.rows);
            if out.slope.is_none() {
                out.slope = p.slope;
                out.intercept = p.intercept;
            }
            for (k, v) in p.diagnostics {
                out.diagnostics.insert(format!("{}: {}", p.experiment, k), v);
            }
            for mut c in p.checks {
                c.name = format!("{}: {}", p.experiment, c.name);
                out.pass &= c.pass;
                out.checks.push(c);
            }
        }
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

/// Column header of [`render_csv`].
pub const CSV_HEADER: &str = "experiment,parameter,measured,reference,residual,slope,pass";

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// One CSV line per row, numbers with 17 significant digits. The slope
/// column is empty when no slope was fitted.
pub fn render_csv(reports: &[RateReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let slope = r.slope.map(num).unwrap_or_default();
        for row in &r.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.experiment,
                num(row.parameter),
                num(row.measured),
                num(row.reference),
                num(row.residual),
                slope,
                r.pass
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct Summary<'a> {
    seed: Option<u64>,
    tolerance_scale: f64,
    pass: bool,
    experiments: Vec<SummaryEntry<'a>>,
}

#[derive(Serialize)]
struct SummaryEntry<'a> {
    experiment: &'a str,
    parameter_name: &'a str,
    pass: bool,
    slope: Option<f64>,
    intercept: Option<f64>,
    max_residual: f64,
    checks: &'a [Check],
    diagnostics: &'a BTreeMap<String, f64>,
}

/// Pretty-printed JSON record of every report's checks and verdict.
pub fn render_summary(reports: &[RateReport], seed: Option<u64>, tolerance_scale: f64) -> String {
    let summary = Summary {
        seed,
        tolerance_scale,
        pass: reports.iter().all(|r| r.pass),
        experiments: reports
            .iter()
            .map(|r| SummaryEntry {
                experiment: &r.experiment,
                parameter_name: &r.parameter_name,
                pass: r.pass,
                slope: r.slope,
                intercept: r.intercept,
                max_residual: r.max_residual(),
                checks: &r.checks,
                diagnostics: &r.diagnostics,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&summary).expect("summary is plain data");
    s.push('\n');
    s
}

//! Command-line entry point: `verify`, `run <config>` and `probe <config>`.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on any
//! input, configuration or I/O error.

pub mod config;
pub mod plan;

use crate::contact::StressState;
use crate::experiments::suite::{verify_suite, CRITERIA};
use crate::experiments::{render_csv, render_summary, RateReport};
use crate::reconstruction::{build_c_left, build_c_right, g_from_probes, probe, CoordinateProbes};
use crate::tensor::{contract3_vv, right_symmetrize, Tensor3, Vec3};
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

// Like `println!`, but a closed pipe is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

pub use config::{parse_config, to_json, ConfigErrors, ConfigIssue, RunConfig};
pub use plan::{prepare, Job, Plan};

/// Seed of the built-in suite when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;
/// Output directory when neither the flag nor the configuration names one.
pub const DEFAULT_OUT: &str = "hyperstress-out";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hyperstress",
    version,
    about = "Contact-force experiments for second-gradient continua"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Configuration file (JSON); an alternative to the positional argument.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for CSV and summary files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the suite's random setups; overrides the configuration file
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Multiplier applied to every error tolerance; rate windows are unchanged.
    #[arg(long = "tolerance-scale", global = true)]
    pub tolerance_scale: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the built-in acceptance suite.
    Verify,
    /// Run the experiments of a configuration file.
    Run {
        /// Configuration file (JSON)
        #[arg(value_name = "CONFIG")]
        path: Option<PathBuf>,
    },
    /// Print the probe reconstruction at the configured point.
    Probe {
        #[arg(value_name = "CONFIG")]
        path: Option<PathBuf>,
    },
}

/// Writes `report.csv` (all rows), one CSV per experiment and
/// `summary.json` into `dir`. Returns the paths written.
pub fn emit_report(
    reports: &[RateReport],
    dir: &Path,
    seed: Option<u64>,
    tolerance_scale: f64,
) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut write = |name: String, body: String| -> std::io::Result<()> {
        let p = dir.join(name);
        std::fs::write(&p, body)?;
        written.push(p);
        Ok(())
    };
    write("report.csv".into(), render_csv(reports))?;
    for (i, r) in reports.iter().enumerate() {
        write(
            format!("{:02}_{}.csv", i + 1, r.experiment),
            render_csv(std::slice::from_ref(r)),
        )?;
    }
    write("summary.json".into(), render_summary(reports, seed, tolerance_scale))?;
    Ok(written)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_report(label: &str, r: &RateReport) {
    let slope = r.slope.map_or(String::new(), |s| format!(" slope={s:.4}"));
    out!("[{}] {label}{slope}", verdict(r.pass));
    for c in r.checks.iter().filter(|c| !c.pass) {
        out!("    failed: {} = {:e}", c.name, c.value);
    }
}

fn scale_from(flag: Option<f64>, cfg: Option<f64>) -> Result<f64, String> {
    let s = flag.or(cfg).unwrap_or(1.0);
    if s > 0.0 && s.is_finite() {
        Ok(s)
    } else {
        Err(format!("tolerance scale must be positive and finite, got {s}"))
    }
}

fn finish(reports: &mut [RateReport], out: Option<&Path>, seed: Option<u64>, scale: f64) -> i32 {
    for r in reports.iter_mut() {
        r.set_tolerance_scale(scale);
    }
    if let Some(dir) = out {
        if let Err(e) = emit_report(reports, dir, seed, scale) {
            eprintln!("error: cannot write reports to {}: {e}", dir.display());
            return EXIT_INPUT;
        }
    }
    if reports.iter().all(|r| r.pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn verify(cli: &Cli) -> i32 {
    let scale = match scale_from(cli.tolerance_scale, None) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let mut reports = match verify_suite(seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let code = finish(&mut reports, cli.out.as_deref(), Some(seed), scale);
    for (i, r) in reports.iter().enumerate() {
        print_report(&format!("criterion {}: {}", i + 1, CRITERIA[i]), r);
    }
    code
}

fn load(path: Option<&PathBuf>) -> Result<RunConfig, i32> {
    let Some(path) = path else {
        eprintln!("error: no configuration file given");
        return Err(EXIT_INPUT);
    };
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    parse_config(&text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_INPUT
    })
}

fn run(cli: &Cli, path: Option<&PathBuf>) -> i32 {
    let cfg = match load(path.or(cli.config.as_ref())) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let plan = match prepare(&cfg) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let scale = match scale_from(cli.tolerance_scale, cfg.tolerance_scale) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut reports = match plan.run() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let code = finish(&mut reports, Some(&out), cli.seed.or(cfg.seed), scale);
    for r in &reports {
        print_report(&r.experiment, r);
    }
    if reports.is_empty() {
        out!("no experiments configured");
    }
    code
}

#[derive(Serialize)]
struct DirectionProbe {
    n: Vec3,
    g_direct: Vec3,
    g_from_probes: Vec3,
    error: f64,
}

#[derive(Serialize)]
struct ProbeOutput {
    probes: CoordinateProbes,
    directions: Vec<DirectionProbe>,
    c_right: Tensor3,
    c_left: Tensor3,
    /// `max |C_right − sym(C)|`, zero for right-symmetric `C`.
    round_trip_error: f64,
    left_double_traction_error: f64,
    pass: bool,
}

/// Tolerance of the probe formula against the direct contraction.
pub const PROBE_TOL: f64 = 1e-13;

fn probe_report(s: &StressState, x0: Vec3, dirs: &[Vec3]) -> crate::error::Result<ProbeOutput> {
    let p = probe(s, x0);
    let c = s.c_at(x0);
    let right = build_c_right(&p);
    let left = build_c_left(&p);
    let mut directions = Vec::new();
    let mut left_err: f64 = 0.0;
    let defaults = [
        Vec3::basis(0),
        Vec3::basis(1),
        Vec3::basis(2),
        Vec3::new(1.0, 2.0, 2.0) * (1.0 / 3.0),
    ];
    for &n in if dirs.is_empty() { &defaults[..] } else { dirs } {
        let g = s.normal_traction(x0, n)?;
        let gp = g_from_probes(&p, n)?;
        left_err = left_err.max((contract3_vv(&left, n, n) - g).norm());
        directions.push(DirectionProbe {
            n,
            g_direct: g,
            g_from_probes: gp,
            error: (gp - g).norm(),
        });
    }
    let round_trip_error = (right - right_symmetrize(&c)).max_abs();
    let scale = c.max_abs().max(1.0);
    let pass = directions.iter().all(|d| d.error <= PROBE_TOL * scale)
        && round_trip_error <= PROBE_TOL * scale
        && left_err <= PROBE_TOL * scale;
    Ok(ProbeOutput {
        probes: p,
        directions,
        c_right: right,
        c_left: left,
        round_trip_error,
        left_double_traction_error: left_err,
        pass,
    })
}

fn probe_cmd(cli: &Cli, path: Option<&PathBuf>) -> i32 {
    let cfg = match load(path.or(cli.config.as_ref())) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let plan = match prepare(&cfg) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let spec = cfg.probe.clone().unwrap_or(config::ProbeSpec {
        x0: Vec3::ZERO,
        directions: Vec::new(),
    });
    let out = match probe_report(&plan.state, spec.x0, &spec.directions) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let text = serde_json::to_string_pretty(&out).expect("probe output is plain data");
    out!("{text}");
    if let Some(dir) = &cli.out {
        if let Err(e) =
            std::fs::create_dir_all(dir).and_then(|_| std::fs::write(dir.join("probe.json"), format!("{text}\n")))
        {
            eprintln!("error: cannot write probe output: {e}");
            return EXIT_INPUT;
        }
    }
    if out.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match &cli.command {
        Command::Verify => verify(&cli),
        Command::Run { path } => run(&cli, path.as_ref()),
        Command::Probe { path } => probe_cmd(&cli, path.as_ref()),
    }
}

//! Validation of a [`RunConfig`] into a list of ready-to-run jobs.

use super::config::{
    field_from_terms, poly_from_terms, stress_from_spec, ConfigErrors, DensityKind, DomainKind, DomainSpec,
    ExperimentKind, ExperimentSpec, Issues, RunConfig,
};
use crate::contact::StressState;
use crate::error::Result;
use crate::experiments::suite::{default_epsilon_grid, default_groove_grid};
use crate::experiments::{
    run_divergence_identity, run_groove_blowup, run_interstitial_decomposition, run_mollifier_limit, run_noll_check,
    run_power_consistency, run_tetrahedron_limit, run_wedge_limit, Expectation, GrooveParams, MollifierParams,
    NollParams, Pairing, RateReport, TetrahedronParams, WedgeDensity, WedgeParams,
};
use crate::geometry::{
    build_box, build_cauchy_tetrahedron, build_graph_patch_box, build_grooved_slab, build_wedge, dihedral_frame,
    AdmissibleDomain, DihedralShape, DihedralSpec,
};
use crate::tensor::{Poly, PolyField, Vec3};
use rayon::prelude::*;

/// A validated experiment with every input constructed.
#[derive(Clone, Debug)]
pub enum Job {
    Divergence(StressState, PolyField<Vec3>, AdmissibleDomain),
    Power(StressState, PolyField<Vec3>, Vec<(f64, AdmissibleDomain)>),
    Interstitial(StressState, PolyField<Vec3>, AdmissibleDomain),
    Groove(GrooveParams),
    Wedge(WedgeParams),
    Noll(NollParams),
    Tetrahedron(TetrahedronParams),
    Mollifier(MollifierParams),
}

impl Job {
    pub fn run(&self) -> Result<RateReport> {
        match self {
            Job::Divergence(s, u, d) => run_divergence_identity(s, u, d),
            Job::Power(s, u, d) => run_power_consistency(s, u, d),
            Job::Interstitial(s, u, d) => run_interstitial_decomposition(s, u, d),
            Job::Groove(p) => run_groove_blowup(p),
            Job::Wedge(p) => run_wedge_limit(p),
            Job::Noll(p) => run_noll_check(p),
            Job::Tetrahedron(p) => run_tetrahedron_limit(p),
            Job::Mollifier(p) => run_mollifier_limit(p),
        }
    }
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct Plan {
    pub state: StressState,
    pub velocity: PolyField<Vec3>,
    pub jobs: Vec<Job>,
}

impl Plan {
    /// Runs every job in parallel; reports come back in configuration order.
    pub fn run(&self) -> Result<Vec<RateReport>> {
        self.jobs.par_iter().map(Job::run).collect()
    }
}

fn unit(v: Vec3, path: &str, issues: &mut Issues) -> Option<Vec3> {
    match v.require_unit() {
        Ok(n) => Some(n),
        Err(e) => {
            issues.push(path, e.to_string());
            None
        }
    }
}

fn dihedral(spec: Option<&DihedralSpec>, path: &str, issues: &mut Issues) -> Option<DihedralShape> {
    let Some(spec) = spec else {
        issues.push(path, "required");
        return None;
    };
    match spec.build() {
        Ok(d) => Some(d),
        Err(e) => {
            issues.push(path, e.to_string());
            None
        }
    }
}

fn positive(v: Option<f64>, default: Option<f64>, path: &str, issues: &mut Issues) -> Option<f64> {
    match v.or(default) {
        None => {
            issues.push(path, "required");
            None
        }
        Some(x) if x > 0.0 && x.is_finite() => Some(x),
        Some(x) => {
            issues.push(path, format!("must be positive and finite, got {x}"));
            None
        }
    }
}

fn grid(values: Option<&Vec<f64>>, default: Vec<f64>, path: &str, issues: &mut Issues) -> Option<Vec<f64>> {
    let g = values.cloned().unwrap_or(default);
    if g.len() < 2 {
        issues.push(path, "needs at least two values");
        return None;
    }
    if let Some(bad) = g.iter().find(|x| !(**x > 0.0) || !x.is_finite()) {
        issues.push(path, format!("values must be positive and finite, got {bad}"));
        return None;
    }
    let mut sorted = g.clone();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        issues.push(path, "values must be distinct");
        return None;
    }
    Some(g)
}

fn corners(
    lo: Option<&Vec<f64>>,
    hi: Option<&Vec<f64>>,
    dim: usize,
    path: &str,
    issues: &mut Issues,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let (Some(lo), Some(hi)) = (lo, hi) else {
        issues.push(format!("{path}.lo/hi"), "required");
        return None;
    };
    if lo.len() != dim || hi.len() != dim {
        issues.push(format!("{path}.lo/hi"), format!("expected {dim} entries each"));
        return None;
    }
    if lo.iter().zip(hi).any(|(a, b)| !(b > a)) {
        issues.push(format!("{path}.lo/hi"), "need lo < hi in every coordinate");
        return None;
    }
    Some((lo.clone(), hi.clone()))
}

fn build_domain(spec: &DomainSpec, issues: &mut Issues) -> Option<AdmissibleDomain> {
    let p = "domain";
    let mut allowed = vec!["kind"];
    let built = match spec.kind {
        DomainKind::Box => {
            allowed.extend(["lo", "hi"]);
            let (lo, hi) = corners(spec.lo.as_ref(), spec.hi.as_ref(), 3, p, issues)?;
            build_box(Vec3::new(lo[0], lo[1], lo[2]), Vec3::new(hi[0], hi[1], hi[2]))
        }
        DomainKind::CauchyTetrahedron => {
            allowed.extend(["normal", "h"]);
            let n = spec.normal.or_else(|| {
                issues.push(format!("{p}.normal"), "required");
                None
            });
            let h = positive(spec.h, Some(1.0), &format!("{p}.h"), issues);
            let n = unit(n?, &format!("{p}.normal"), issues)?;
            build_cauchy_tetrahedron(n, h?)
        }
        DomainKind::GroovedSlab => {
            allowed.extend(["grooves", "dihedral"]);
            let d = dihedral(spec.dihedral.as_ref(), &format!("{p}.dihedral"), issues)?;
            build_grooved_slab(spec.grooves.unwrap_or(4), &d)
        }
        DomainKind::Wedge => {
            allowed.extend(["dihedral", "c", "length", "epsilon"]);
            let d = dihedral(spec.dihedral.as_ref(), &format!("{p}.dihedral"), issues);
            let c = positive(spec.c, Some(2.0), &format!("{p}.c"), issues);
            let l = positive(spec.length, Some(1.0), &format!("{p}.length"), issues);
            let e = positive(spec.epsilon, Some(0.5), &format!("{p}.epsilon"), issues);
            build_wedge(&d?, c?, l?, e?)
        }
        DomainKind::GraphPatchBox => {
            allowed.extend(["phi", "lo", "hi", "z0"]);
            let phi = match &spec.phi {
                Some(t) => poly_from_terms(t, &format!("{p}.phi"), issues),
                None => {
                    issues.push(format!("{p}.phi"), "required");
                    return None;
                }
            };
            let (lo, hi) = corners(spec.lo.as_ref(), spec.hi.as_ref(), 2, p, issues)?;
            build_graph_patch_box(&phi, [lo[0], lo[1]], [hi[0], hi[1]], spec.z0.unwrap_or(0.0))
        }
    };
    for name in domain_fields(spec) {
        if !allowed.contains(&name) {
            issues.push(
                format!("{p}.{name}"),
                format!("not used by domain kind {:?}", spec.kind),
            );
        }
    }
    match built.and_then(|d| d.validate().map(|_| d)) {
        Ok(d) => Some(d),
        Err(e) => {
            issues.push(p, e.to_string());
            None
        }
    }
}

fn domain_fields(s: &DomainSpec) -> Vec<&'static str> {
    let mut v = Vec::new();
    let mut add = |set: bool, name| {
        if set {
            v.push(name)
        }
    };
    add(s.lo.is_some(), "lo");
    add(s.hi.is_some(), "hi");
    add(s.normal.is_some(), "normal");
    add(s.h.is_some(), "h");
    add(s.grooves.is_some(), "grooves");
    add(s.dihedral.is_some(), "dihedral");
    add(s.c.is_some(), "c");
    add(s.length.is_some(), "length");
    add(s.epsilon.is_some(), "epsilon");
    add(s.phi.is_some(), "phi");
    add(s.z0.is_some(), "z0");
    v
}

fn experiment_fields(s: &ExperimentSpec) -> Vec<&'static str> {
    let mut v = Vec::new();
    let mut add = |set: bool, name| {
        if set {
            v.push(name)
        }
    };
    add(s.grid.is_some(), "grid");
    add(s.ratios.is_some(), "ratios");
    add(s.center.is_some(), "center");
    add(s.dihedral.is_some(), "dihedral");
    add(s.f0.is_some(), "f0");
    add(s.u0.is_some(), "u0");
    add(s.pairing.is_some(), "pairing");
    add(s.expectation.is_some(), "expectation");
    add(s.density.is_some(), "density");
    add(s.c.is_some(), "c");
    add(s.length.is_some(), "length");
    add(s.x0.is_some(), "x0");
    add(s.normal.is_some(), "normal");
    add(s.h.is_some(), "h");
    add(s.phi.is_some(), "phi");
    add(s.half_width.is_some(), "half_width");
    add(s.fd_step.is_some(), "fd_step");
    add(s.gamma.is_some(), "gamma");
    add(s.lo.is_some(), "lo");
    add(s.hi.is_some(), "hi");
    v
}

fn allowed_fields(kind: ExperimentKind) -> &'static [&'static str] {
    match kind {
        ExperimentKind::DivergenceIdentity | ExperimentKind::InterstitialDecomposition => &[],
        ExperimentKind::PowerConsistency => &["ratios", "center"],
        ExperimentKind::GrooveBlowup => &["grid", "dihedral", "f0", "u0", "pairing", "expectation"],
        ExperimentKind::WedgeLimit => &["grid", "dihedral", "f0", "u0", "density", "c", "length"],
        ExperimentKind::NollCheck => &["x0", "normal", "phi", "half_width", "fd_step"],
        ExperimentKind::TetrahedronLimit => &["grid", "x0", "normal", "h"],
        ExperimentKind::MollifierLimit => &["grid", "f0", "gamma", "lo", "hi"],
    }
}

/// Checks that polynomial integrands of `degree` can be integrated exactly
/// on every face, edge and cell of `dom`.
fn quadrature_fits(dom: &AdmissibleDomain, degree: usize) -> Result<()> {
    dom.integrate_volume(degree, |_| 0.0)?;
    dom.integrate_boundary(degree, |_| 0.0)?;
    dom.integrate_edges(degree, |_| 0.0)?;
    Ok(())
}

struct Ctx<'a> {
    state: &'a StressState,
    velocity: &'a PolyField<Vec3>,
    domain: Option<&'a AdmissibleDomain>,
    domain_given: bool,
}

fn experiment(spec: &ExperimentSpec, path: &str, ctx: &Ctx<'_>, issues: &mut Issues) -> Option<Job> {
    for name in experiment_fields(spec) {
        if !allowed_fields(spec.kind).contains(&name) {
            issues.push(
                format!("{path}.{name}"),
                format!("not used by experiment kind {:?}", spec.kind),
            );
        }
    }
    let s = ctx.state.clone();
    let u = ctx.velocity.clone();
    let at = |f: &str| format!("{path}.{f}");
    let needs_domain = |issues: &mut Issues| -> Option<AdmissibleDomain> {
        match ctx.domain {
            Some(d) => {
                let degree = s.degree() + u.degree() + 2;
                if let Err(e) = quadrature_fits(d, degree) {
                    issues.push("stress_state", format!("degree/quadrature mismatch on the domain: {e}"));
                    return None;
                }
                Some(d.clone())
            }
            None => {
                if !ctx.domain_given {
                    issues.push("domain", format!("required by {path}"));
                }
                None
            }
        }
    };
    match spec.kind {
        ExperimentKind::DivergenceIdentity => needs_domain(issues).map(|d| Job::Divergence(s, u, d)),
        ExperimentKind::InterstitialDecomposition => needs_domain(issues).map(|d| Job::Interstitial(s, u, d)),
        ExperimentKind::PowerConsistency => {
            let ratios = grid(spec.ratios.as_ref(), vec![1.0, 0.5, 0.25, 0.125], &at("ratios"), issues);
            let dom = needs_domain(issues)?;
            let (lo, hi) = dom.bounding_box();
            let center = spec.center.unwrap_or((lo + hi) * 0.5);
            let mut family = Vec::new();
            for r in ratios? {
                match dom.homothety(r, center) {
                    Ok(d) => family.push((r, d)),
                    Err(e) => issues.push(at("ratios"), e.to_string()),
                }
            }
            Some(Job::Power(s, u, family))
        }
        ExperimentKind::GrooveBlowup => {
            let d = dihedral(spec.dihedral.as_ref(), &at("dihedral"), issues);
            let g = grid(
                spec.grid.as_ref(),
                default_groove_grid().into_iter().map(|n| n as f64).collect(),
                &at("grid"),
                issues,
            );
            let g = g.and_then(|g| {
                if g.iter().any(|n| n.fract() != 0.0 || *n < 2.0 || *n > 4096.0) {
                    issues.push(at("grid"), "groove counts must be integers between 2 and 4096");
                    None
                } else {
                    Some(g.into_iter().map(|n| n as usize).collect::<Vec<_>>())
                }
            });
            let d = d?;
            if let Err(e) = dihedral_frame(&d) {
                issues.push(at("dihedral"), e.to_string());
                return None;
            }
            Some(Job::Groove(GrooveParams {
                shape: d,
                f0: spec.f0.unwrap_or(Vec3::basis(0)),
                u0: spec.u0.unwrap_or(Vec3::basis(0)),
                grid: g?,
                pairing: spec.pairing.unwrap_or(Pairing::Paired),
                expectation: spec.expectation.unwrap_or(Expectation::Blowup),
            }))
        }
        ExperimentKind::WedgeLimit => {
            let d = dihedral(spec.dihedral.as_ref(), &at("dihedral"), issues);
            let g = grid(spec.grid.as_ref(), default_epsilon_grid(), &at("grid"), issues);
            let c = positive(spec.c, Some(2.0), &at("c"), issues);
            let ell = positive(spec.length, Some(1.0), &at("length"), issues);
            let density = match spec.density.unwrap_or(DensityKind::Consistent) {
                DensityKind::Consistent => {
                    if spec.f0.is_some() {
                        issues.push(at("f0"), "only used with density \"raw\"");
                    }
                    WedgeDensity::Consistent(s)
                }
                DensityKind::Raw => WedgeDensity::Raw(spec.f0.unwrap_or(Vec3::basis(0))),
            };
            let (d, g, c, ell) = (d?, g?, c?, ell?);
            for eps in &g {
                if let Err(e) = build_wedge(&d, c, ell, *eps) {
                    issues.push(at("grid"), format!("epsilon {eps}: {e}"));
                    return None;
                }
            }
            Some(Job::Wedge(WedgeParams {
                shape: d,
                c,
                ell,
                u0: spec.u0.unwrap_or(Vec3::basis(0)),
                grid: g,
                density,
            }))
        }
        ExperimentKind::NollCheck => {
            let n0 = unit(spec.normal.unwrap_or(Vec3::basis(2)), &at("normal"), issues);
            let phi = match &spec.phi {
                Some(t) => poly_from_terms(t, &at("phi"), issues),
                None => Poly::from_terms([([2, 0, 0], 0.5), ([0, 2, 0], 0.5)]),
            };
            let o = [0.0; 3];
            if phi.degree_in(2) > 0 {
                issues.push(at("phi"), "must depend on the first two variables only");
            } else if phi.eval(o) != 0.0 || phi.partial(0).eval(o) != 0.0 || phi.partial(1).eval(o) != 0.0 {
                issues.push(
                    at("phi"),
                    "patch not tangent: phi and its gradient must vanish at the origin",
                );
            }
            let hw = positive(spec.half_width, Some(0.5), &at("half_width"), issues);
            let step = positive(spec.fd_step, Some(1e-3), &at("fd_step"), issues);
            if step.is_some_and(|h| h >= 0.1) {
                issues.push(at("fd_step"), "must be below 0.1");
            }
            Some(Job::Noll(NollParams {
                state: s,
                x0: spec.x0.unwrap_or(Vec3::ZERO),
                n0: n0?,
                phi,
                half_width: hw?,
                fd_step: step?,
            }))
        }
        ExperimentKind::TetrahedronLimit => {
            let default_n = Vec3::new(1.0, 1.0, 1.0) * (1.0 / 3f64.sqrt());
            let n = unit(spec.normal.unwrap_or(default_n), &at("normal"), issues);
            if n.is_some_and(|n| n.0.iter().any(|c| !(*c > 0.0))) {
                issues.push(at("normal"), "all components must be positive");
                return None;
            }
            let h = positive(spec.h, Some(1.0), &at("h"), issues);
            let g = grid(spec.grid.as_ref(), default_epsilon_grid(), &at("grid"), issues);
            Some(Job::Tetrahedron(TetrahedronParams {
                state: s,
                x0: spec.x0.unwrap_or(Vec3::ZERO),
                n: n?,
                h: h?,
                grid: g?,
            }))
        }
        ExperimentKind::MollifierLimit => {
            let gamma = spec.gamma.unwrap_or(1);
            if !(1..=2).contains(&gamma) {
                issues.push(at("gamma"), format!("must be 1 or 2, got {gamma}"));
            }
            let lo = spec.lo.unwrap_or(Vec3::new(-1.0, 0.0, 0.0));
            let hi = spec.hi.unwrap_or(Vec3::new(1.0, 1.0, 1.0));
            if (0..3).any(|i| !(hi[i] > lo[i])) {
                issues.push(at("lo/hi"), "need lo < hi in every coordinate");
                return None;
            }
            let g = grid(spec.grid.as_ref(), default_epsilon_grid(), &at("grid"), issues)?;
            let width = hi[0] - lo[0];
            if let Some(e) = g.iter().find(|e| **e > width) {
                issues.push(
                    at("grid"),
                    format!("support not contained in box: epsilon {e} exceeds width {width}"),
                );
            }
            if !(1..=2).contains(&gamma) {
                return None;
            }
            Some(Job::Mollifier(MollifierParams {
                gamma,
                f0: PolyField::constant(spec.f0.unwrap_or(Vec3::basis(0))),
                u,
                lo: lo.0,
                hi: hi.0,
                grid: g,
            }))
        }
    }
}

/// Validates the whole configuration. No job is returned unless every item
/// is valid; otherwise all issues are reported together.
pub fn prepare(cfg: &RunConfig) -> std::result::Result<Plan, ConfigErrors> {
    let mut issues = Issues::default();
    let (t, c) = stress_from_spec(&cfg.stress_state, &mut issues);
    let velocity: PolyField<Vec3> = field_from_terms(&cfg.velocity, 1, "velocity", &mut issues);
    let state = StressState::new(t, c);
    if let Some(scale) = cfg.tolerance_scale {
        if !(scale > 0.0) || !scale.is_finite() {
            issues.push("tolerance_scale", format!("must be positive and finite, got {scale}"));
        }
    }
    let domain = cfg.domain.as_ref().and_then(|d| build_domain(d, &mut issues));
    let ctx = Ctx {
        state: &state,
        velocity: &velocity,
        domain: domain.as_ref(),
        domain_given: cfg.domain.is_some(),
    };
    let mut jobs = Vec::new();
    for (i, spec) in cfg.experiments.iter().enumerate() {
        if let Some(job) = experiment(spec, &format!("experiments[{i}]"), &ctx, &mut issues) {
            jobs.push(job);
        }
    }
    if let Some(p) = &cfg.probe {
        for (i, d) in p.directions.iter().enumerate() {
            unit(*d, &format!("probe.directions[{i}]"), &mut issues);
        }
    }
    if issues.0.is_empty() {
        Ok(Plan { state, velocity, jobs })
    } else {
        Err(ConfigErrors(issues.0))
    }
}

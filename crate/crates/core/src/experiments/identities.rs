use super::{relative_error, RateReport};
use crate::contact::{bulk_power, contact_power, interstitial_flux_field, quasi_balance_constant, StressState};
use crate::error::Result;
use crate::geometry::AdmissibleDomain;
use crate::tensor::{div_vec, PolyField, Tensor2, Vec3};
use rayon::prelude::*;

/// `∫_V div q dv` against `∫_S q·n ds` for the interstitial flux
/// `q = ∇U : C`. The relative error is `|L − R| / (|L| + |R| + 1)`.
pub fn run_divergence_identity(s: &StressState, u: &PolyField<Vec3>, dom: &AdmissibleDomain) -> Result<RateReport> {
    let q = interstitial_flux_field(s, u);
    let lhs = dom.integrate_poly(div_vec(&q).component(0))?;
    let rhs = dom.integrate_boundary(q.degree(), |p| q.eval(p.x).dot(p.normal))?;
    let rel = (lhs - rhs).abs() / (lhs.abs() + rhs.abs() + 1.0);
    let mut r = RateReport::new("divergence_identity", "case");
    r.row(0.0, lhs, rhs, rel);
    r.at_most("relative error", rel, 1e-12);
    Ok(r)
}

/// Contact power against bulk power on each domain of a family, plus the
/// quasi-balance bound `|P| ≤ K_U |V|`.
pub fn run_power_consistency(
    s: &StressState,
    u: &PolyField<Vec3>,
    domains: &[(f64, AdmissibleDomain)],
) -> Result<RateReport> {
    let results: Vec<Result<(f64, f64, f64, f64, f64, f64)>> = domains
        .par_iter()
        .map(|(param, dom)| {
            let p = contact_power(s, dom, u)?;
            let b = bulk_power(s, dom, u)?;
            let scale = p.surface_f.abs() + p.edge.abs() + p.normal_g.abs();
            let k = quasi_balance_constant(s, dom, u);
            let vol = dom.volume()?;
            Ok((*param, p.total, b, relative_error(p.total, b, scale), k, vol))
        })
        .collect();
    let mut r = RateReport::new("power_consistency", "domain");
    let mut worst_rel: f64 = 0.0;
    let mut worst_bound: f64 = 0.0;
    for res in results {
        let (param, p, b, rel, k, vol) = res?;
        r.row(param, p, b, rel);
        worst_rel = worst_rel.max(rel);
        let bound = k * vol.abs();
        let ratio = if bound > 0.0 {
            p.abs() / bound
        } else if p == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        worst_bound = worst_bound.max(ratio);
    }
    r.at_most("max relative error", worst_rel, 1e-12);
    r.below("max |P| / (K_U |V|)", worst_bound, 1.0);
    Ok(r)
}

/// `∫_S q·n ds` against the split `∫_L ℱ·U − ∫_S (∇ˢ·W)·U + ∫_S G·∂U/∂n`,
/// which holds for any hyperstress.
pub fn run_interstitial_decomposition(
    s: &StressState,
    u: &PolyField<Vec3>,
    dom: &AdmissibleDomain,
) -> Result<RateReport> {
    let q = interstitial_flux_field(s, u);
    let flux = dom.integrate_boundary(q.degree(), |p| q.eval(p.x).dot(p.normal))?;
    let c_only = s.with_stress(PolyField::<Tensor2>::zero());
    let parts = contact_power(&c_only, dom, u)?;
    let scale = parts.surface_f.abs() + parts.edge.abs() + parts.normal_g.abs();
    let rel = relative_error(flux, parts.total, scale);
    let mut r = RateReport::new("interstitial_decomposition", "case");
    r.row(0.0, flux, parts.total, rel);
    r.at_most("relative error", rel, 1e-12);
    Ok(r)
}

use super::{loglog_fit, CheckKind, RateReport};
use crate::contact::{contact_force, raw_power, reduced_edge_force, RawContactAnsatz, StressState};
use crate::error::{Error, Result};
use crate::geometry::{build_grooved_slab, build_wedge, dihedral_frame, make_dihedral, DihedralShape};
use crate::tensor::{PolyField, Vec3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Whether the reversed groove edges carry `−ℱ₀` or `+ℱ₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    Paired,
    Unpaired,
}

/// Expected behaviour of `|P_N| / |V_N|` as `N` grows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// Ratio grows like `N²` (paired) or `N⁴` (unpaired).
    Blowup,
    /// Ratio stays bounded; fails when the fitted growth exceeds `N^0.2`.
    Bounded,
}

#[derive(Clone, Debug)]
pub struct GrooveParams {
    pub shape: DihedralShape,
    pub f0: Vec3,
    pub u0: Vec3,
    pub grid: Vec<usize>,
    pub pairing: Pairing,
    pub expectation: Expectation,
}

const RATE_WINDOW: f64 = 0.2;

fn check_grid<T: PartialOrd + Copy>(grid: &[T], what: &str) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "{what} grid needs at least two values"
        )));
    }
    Ok(())
}

/// Raw edge force `ℱ₀` on grooved slabs of `N` grooves. Paired ansätze put
/// `−ℱ₀` on the reversed edges and are tested with `U = (x·e3) U₀`; unpaired
/// ones put `+ℱ₀` there and are tested through the resultant force.
pub fn run_groove_blowup(p: &GrooveParams) -> Result<RateReport> {
    check_grid(&p.grid, "groove")?;
    let d = p.shape;
    let reversed = make_dihedral(d.n2(), d.n1(), d.tau())?;
    let (frame, _, _) = dihedral_frame(&d)?;
    let sign = match p.pairing {
        Pairing::Paired => -1.0,
        Pairing::Unpaired => 1.0,
    };
    let raw = RawContactAnsatz::new()
        .with_edge(d, PolyField::constant(p.f0))
        .with_edge(reversed, PolyField::constant(p.f0 * sign));
    let zero = RawContactAnsatz::new()
        .with_edge(d, PolyField::zero())
        .with_edge(reversed, PolyField::zero());
    let u = match p.pairing {
        Pairing::Paired => PolyField::linear_along(frame[2], p.u0),
        Pairing::Unpaired => PolyField::constant(p.u0),
    };
    let rows: Vec<Result<(f64, f64, f64, f64, usize)>> = p
        .grid
        .par_iter()
        .map(|&n| {
            let dom = build_grooved_slab(n, &d)?;
            let vol = dom.volume()?;
            let measured = match p.pairing {
                Pairing::Paired => raw_power(&raw, &dom, &u)?.total.abs(),
                Pairing::Unpaired => contact_force(&raw, &dom)?.norm(),
            };
            let z = raw_power(&zero, &dom, &u)?.total.abs();
            Ok((n as f64, measured, vol, z, dom.faces.len()))
        })
        .collect();
    let name = match p.pairing {
        Pairing::Paired => "groove_blowup_paired",
        Pairing::Unpaired => "groove_blowup_unpaired",
    };
    let mut r = RateReport::new(name, "N");
    let mut ratios = Vec::new();
    let mut vols = Vec::new();
    let mut zero_power: f64 = 0.0;
    for row in rows {
        let (n, measured, vol, z, _) = row?;
        r.row(n, measured, vol, measured / vol);
        ratios.push(measured / vol);
        vols.push(vol);
        zero_power = zero_power.max(z);
    }
    let target = match p.pairing {
        Pairing::Paired => 2.0,
        Pairing::Unpaired => 4.0,
    };
    let window = match p.expectation {
        Expectation::Blowup => CheckKind::Within {
            lo: target - RATE_WINDOW,
            hi: target + RATE_WINDOW,
        },
        Expectation::Bounded => CheckKind::Below { max: RATE_WINDOW },
    };
    let xs: Vec<f64> = r.rows.iter().map(|x| x.parameter).collect();
    match loglog_fit(&xs, &vols) {
        Some((v, _)) => r.within("volume slope", v, -4.1, -3.9),
        None => r.within("volume slope (not fittable)", f64::NAN, -4.1, -3.9),
    }
    r.zero("zero ansatz power", zero_power);
    r.fit("|P|/|V|", &ratios, window);
    Ok(r)
}

/// Edge density probed on the wedges `P_ε`.
#[derive(Clone, Debug)]
pub enum WedgeDensity {
    /// The edge force of a stress state; its reduced part must vanish.
    Consistent(StressState),
    /// A constant raw edge force.
    Raw(Vec3),
}

#[derive(Clone, Debug)]
pub struct WedgeParams {
    pub shape: DihedralShape,
    pub c: f64,
    pub ell: f64,
    pub u0: Vec3,
    pub grid: Vec<f64>,
    pub density: WedgeDensity,
}

/// `ε⁻³ ∫_L ℱ·U dl` on the wedges `P_ε` with `U = (x·e3) U₀`. The raw case
/// converges to `k (ℱ₀·U₀)` with `k = ℓ`; the consistent case has reduced
/// edge force identically zero.
pub fn run_wedge_limit(p: &WedgeParams) -> Result<RateReport> {
    check_grid(&p.grid, "epsilon")?;
    let (frame, _, _) = dihedral_frame(&p.shape)?;
    let u = PolyField::linear_along(frame[2], p.u0);
    let rows: Vec<Result<(f64, f64, f64, f64)>> = p
        .grid
        .par_iter()
        .map(|&eps| {
            let dom = build_wedge(&p.shape, p.c, p.ell, eps)?;
            let vol = dom.volume()?;
            let li = dom.edges_by_label("L")[0];
            let scale = eps.powi(-3);
            let val = match &p.density {
                WedgeDensity::Consistent(s) => {
                    let mut err = None;
                    let v = dom.integrate_edge(li, s.degree() + 1, |q| match reduced_edge_force(s, s, q) {
                        Ok(f) => f.dot(u.eval(q.x)),
                        Err(e) => {
                            err.get_or_insert(e);
                            0.0
                        }
                    })?;
                    if let Some(e) = err {
                        return Err(e);
                    }
                    v
                }
                WedgeDensity::Raw(f0) => dom.integrate_edge(li, 1, |q| f0.dot(u.eval(q.x)))?,
            };
            let k = dom.integrate_edge(li, 1, |q| q.x.dot(frame[2]))?;
            Ok((eps, val * scale, k * scale, vol))
        })
        .collect();
    let mut r = RateReport::new(
        match p.density {
            WedgeDensity::Consistent(_) => "wedge_limit_consistent",
            WedgeDensity::Raw(_) => "wedge_limit_raw",
        },
        "epsilon",
    );
    let mut vols = Vec::new();
    let mut worst: f64 = 0.0;
    let mut worst_k: f64 = 0.0;
    for row in rows {
        let (eps, measured, k, vol) = row?;
        vols.push(vol);
        worst_k = worst_k.max((k - p.ell).abs() / p.ell);
        let reference = match p.density {
            WedgeDensity::Consistent(_) => 0.0,
            WedgeDensity::Raw(f0) => p.ell * f0.dot(p.u0),
        };
        let residual = (measured - reference).abs() / reference.abs().max(1.0);
        worst = worst.max(residual);
        r.row(eps, measured, reference, residual);
    }
    let xs: Vec<f64> = r.rows.iter().map(|x| x.parameter).collect();
    match loglog_fit(&xs, &vols) {
        Some((v, _)) => r.within("volume slope", v, 4.9, 5.1),
        None => r.within("volume slope (not fittable)", f64::NAN, 4.9, 5.1),
    }
    r.at_most("relative error of k against length", worst_k, 1e-6);
    match p.density {
        WedgeDensity::Consistent(_) => r.zero("reduced edge power", worst),
        WedgeDensity::Raw(_) => r.at_most("relative error of limit", worst, 1e-6),
    }
    Ok(r)
}

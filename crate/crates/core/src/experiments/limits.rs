use super::{loglog_fit, CheckKind, RateReport};
use crate::contact::StressState;
use crate::error::{Error, Result};
use crate::geometry::{build_cauchy_tetrahedron, Face, ParametricPatch, SurfacePoint};
use crate::reconstruction::{g_from_probes, probe};
use crate::tensor::{frame_from_normal, Poly, PolyField, Tensor2, Vec3};
use rayon::prelude::*;

/// A curved surface through `x0`, tangent there to the plane with normal `n0`,
/// given as the graph `σ ↦ x0 + σ1 f1 + σ2 f2 + φ(σ) n0` over
/// `[−a, a]²`.
#[derive(Clone, Debug)]
pub struct NollParams {
    pub state: StressState,
    pub x0: Vec3,
    pub n0: Vec3,
    /// `φ(σ1, σ2)` in the first two variables; must vanish to first order at 0.
    pub phi: Poly,
    pub half_width: f64,
    /// Step of the finite-difference surface divergence, in patch parameters.
    pub fd_step: f64,
}

struct NollPatch {
    face: Face,
    point: SurfacePoint,
}

fn noll_patch(p: &NollParams, sign: f64) -> Result<NollPatch> {
    let [f1, f2, n0] = frame_from_normal(p.n0)?;
    let a = p.half_width;
    let s1 = Poly::affine(-a, [2.0 * a, 0.0, 0.0]);
    let s2 = Poly::affine(-a, [0.0, 2.0 * a, 0.0]);
    let phi = p.phi.compose(&[s1.clone(), s2.clone(), Poly::zero()]).scale(sign);
    let r: [Poly; 3] = std::array::from_fn(|i| {
        &(&(&Poly::constant(p.x0[i]) + &s1.scale(f1[i])) + &s2.scale(f2[i])) + &phi.scale(n0[i])
    });
    let patch = ParametricPatch::new(r, 1.0)?;
    let pp = patch.point(0.5, 0.5);
    Ok(NollPatch {
        face: Face::patch(patch),
        point: SurfacePoint {
            face: 0,
            x: pp.x,
            normal: pp.normal,
            params: Some([0.5, 0.5]),
        },
    })
}

/// `∇ˢ·((C·n)Π)` from fourth-order central differences in the patch
/// parameters, independent of the analytic pullback.
fn fd_divergence(s: &StressState, patch: &ParametricPatch, h: f64) -> Vec3 {
    let w = |u: f64, v: f64| -> Tensor2 {
        let q = patch.point(u, v);
        let n = q.normal;
        s.c_at(q.x).dot(n).matmul(&(Tensor2::identity() - n.outer(n)))
    };
    let diff = |f: &dyn Fn(f64) -> Tensor2| -> Tensor2 {
        (f(-2.0 * h) + f(-h) * -8.0 + f(h) * 8.0 - f(2.0 * h)) * (1.0 / (12.0 * h))
    };
    let dw = [diff(&|d| w(0.5 + d, 0.5)), diff(&|d| w(0.5, 0.5 + d))];
    let q = patch.point(0.5, 0.5);
    let r = [q.r_s, q.r_t];
    let g = [[r[0].dot(r[0]), r[0].dot(r[1])], [r[1].dot(r[0]), r[1].dot(r[1])]];
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let ginv = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]];
    let mut out = Vec3::ZERO;
    for a in 0..2 {
        for b in 0..2 {
            out += dw[a].dot(r[b]) * ginv[a][b];
        }
    }
    out
}

/// Compares a curved surface with its tangent plane at `x0`, for `φ` and
/// `−φ`: the double tractions agree, the reduced surface force
/// `F + ∇ˢ·W` equals `T(x0) n0` on both, and the change of `F` is carried
/// entirely by the surface-divergence term.
pub fn run_noll_check(p: &NollParams) -> Result<RateReport> {
    let x0 = [0.0, 0.0, 0.0];
    let grad = [p.phi.partial(0).eval(x0), p.phi.partial(1).eval(x0)];
    let top = p.phi.max_abs_coefficient().max(1.0);
    if p.phi.eval(x0).abs() > 1e-14 * top || grad.iter().any(|g| g.abs() > 1e-14 * top) {
        return Err(Error::InvalidParameter(
            "surface must pass through x0 tangent to the reference plane".into(),
        ));
    }
    if !(p.half_width > 0.0) || !(p.fd_step > 0.0) || p.fd_step * 2.0 >= 0.5 {
        return Err(Error::InvalidParameter(
            "half width and step must be positive and small".into(),
        ));
    }
    let n0 = p.n0.require_unit()?;
    let [f1, f2, _] = frame_from_normal(n0)?;
    let a = p.half_width;
    let flat = Face::planar(vec![
        p.x0 - f1 * a - f2 * a,
        p.x0 + f1 * a - f2 * a,
        p.x0 + f1 * a + f2 * a,
        p.x0 - f1 * a + f2 * a,
    ])?;
    let flat_point = SurfacePoint {
        face: 0,
        x: p.x0,
        normal: flat.normal_at(None)?,
        params: None,
    };
    let s = &p.state;
    let tn = s.t_at(p.x0).dot(n0);
    let g_flat = s.normal_traction(p.x0, n0)?;
    let d_flat = s.hyperstress_divergence(&flat, &flat_point)?;
    let f_flat = s.surface_force(&flat, &flat_point)?;
    let scale = tn.norm().max(1.0);

    let mut r = RateReport::new("noll_check", "sign");
    let mut g_err: f64 = 0.0;
    let mut split_err: f64 = 0.0;
    let mut reduced = Vec::new();
    for sign in [1.0, -1.0] {
        let np = noll_patch(p, sign)?;
        let patch = match &np.face.kind {
            crate::geometry::FaceKind::Patch(q) => q,
            crate::geometry::FaceKind::Planar(_) => unreachable!("graph patches are curved"),
        };
        let g_curved = s.normal_traction(np.point.x, np.point.normal)?;
        g_err = g_err.max((g_curved - g_flat).norm() / g_flat.norm().max(1.0));
        let d_curved = s.hyperstress_divergence(&np.face, &np.point)?;
        let f_curved = s.surface_force(&np.face, &np.point)?;
        let d_fd = fd_divergence(s, patch, p.fd_step);
        let f_reduced = f_curved + d_fd;
        let err = (f_reduced - tn).norm() / scale;
        let split = ((f_curved - f_flat) - (d_flat - d_curved)).norm() / scale;
        split_err = split_err.max(split);
        reduced.push(f_reduced);
        r.row(sign, (d_curved - d_flat).norm(), tn.norm(), err);
    }
    r.at_most("double traction difference", g_err, 1e-14);
    r.at_most("reduced surface force against T n0", r.max_residual(), 1e-8);
    r.at_most(
        "reduced surface force, phi against -phi",
        (reduced[0] - reduced[1]).norm() / scale,
        1e-8,
    );
    r.at_most("surface force change carried by divergence", split_err, 1e-12);
    Ok(r)
}

/// Shrinking Cauchy tetrahedra `x0 + ε T(n, h)`.
#[derive(Clone, Debug)]
pub struct TetrahedronParams {
    pub state: StressState,
    pub x0: Vec3,
    pub n: Vec3,
    pub h: f64,
    pub grid: Vec<f64>,
}

/// For `U = ((x − x0)·n) U₀` with `U₀` running over the coordinate basis,
/// `Q(ε) = ε⁻² [Σ_L ∫ ℱ·U + Σ_S ∫ G·∂U/∂n]` is compared with the same
/// quantity for the state frozen at `x0`. The surface-force contribution
/// is reported separately and must vanish like `ε`.
pub fn run_tetrahedron_limit(p: &TetrahedronParams) -> Result<RateReport> {
    if p.grid.len() < 2 {
        return Err(Error::InvalidParameter("epsilon grid needs at least two values".into()));
    }
    let n = p.n.require_unit()?;
    let base = build_cauchy_tetrahedron(n, p.h)?;
    let s = &p.state;
    let frozen = StressState::constant(s.t_at(p.x0), s.c_at(p.x0));
    let deg = s.degree() + 1;
    let q_of = |st: &StressState, dom: &crate::geometry::AdmissibleDomain| -> Result<(Vec3, Vec3)> {
        let mut err = None;
        let mut faces = Vec3::ZERO;
        let mut surface = Vec3::ZERO;
        for fi in 0..dom.faces.len() {
            let v = dom.integrate_face(fi, deg, |q| {
                let g = st.normal_traction(q.x, q.normal).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    Vec3::ZERO
                });
                g * n.dot(q.normal)
            })?;
            faces += v;
            let w = dom.integrate_face(fi, deg, |q| {
                let f = st.surface_force(&dom.faces[fi], q).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    Vec3::ZERO
                });
                f * (q.x - p.x0).dot(n)
            })?;
            surface += w;
        }
        let edges = dom.integrate_edges(deg, |q| st.edge_force(q.x, &q.dihedral) * (q.x - p.x0).dot(n))?;
        if let Some(e) = err {
            return Err(e);
        }
        Ok((faces + edges, surface))
    };
    let rows: Vec<Result<(f64, Vec3, Vec3, Vec3)>> = p
        .grid
        .par_iter()
        .map(|&eps| {
            let dom = base.homothety(eps, Vec3::ZERO)?.translated(p.x0);
            let (q, f) = q_of(s, &dom)?;
            let (q0, _) = q_of(&frozen, &dom)?;
            let k = eps.powi(-2);
            Ok((eps, q * k, q0 * k, f * k))
        })
        .collect();
    let mut r = RateReport::new("tetrahedron_limit", "epsilon");
    let mut residuals = Vec::new();
    let mut f_terms = Vec::new();
    for row in rows {
        let (eps, q, q0, f) = row?;
        let res = (q - q0).norm();
        r.row(eps, q.norm(), q0.norm(), res);
        residuals.push(res);
        f_terms.push(f.norm());
    }
    let g_direct = s.normal_traction(p.x0, n)?;
    let g_probe = g_from_probes(&probe(s, p.x0), n)?;
    r.at_most(
        "double traction from probes",
        (g_direct - g_probe).norm() / g_direct.norm().max(1.0),
        1e-13,
    );
    let xs: Vec<f64> = r.rows.iter().map(|x| x.parameter).collect();
    r.note("surface force term, smallest epsilon", *f_terms.last().unwrap_or(&0.0));
    if let Some((slope, _)) = loglog_fit(&xs, &f_terms) {
        r.note("surface force term slope", slope);
    }
    r.fit_with_floor("residual", &residuals, CheckKind::AtLeast { min: 0.9 }, 1e-13);
    Ok(r)
}

/// Mollified surface action `f_ε = ε^{−γ} ψ^{(γ−1)}((x1 − b1)/ε) f₀` in a
/// slab of width `ε` below the face `x1 = b1` of a box.
#[derive(Clone, Debug)]
pub struct MollifierParams {
    pub gamma: u32,
    pub f0: PolyField<Vec3>,
    pub u: PolyField<Vec3>,
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub grid: Vec<f64>,
}

/// `ψ(s) = 30 s² (1 + s)²` on `[−1, 0]`, unit mass.
fn bump() -> Poly {
    Poly::from_terms([([2, 0, 0], 30.0), ([3, 0, 0], 60.0), ([4, 0, 0], 30.0)])
}

/// `∫_V f_ε·U dv` as `ε → 0`. For `γ = 1` the limit is `∫_S f₀·U ds`; for
/// `γ = 2` it is `−∫_S f₀·∂₁U ds`, a first-normal-derivative functional.
pub fn run_mollifier_limit(p: &MollifierParams) -> Result<RateReport> {
    if !(1..=2).contains(&p.gamma) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be 1 or 2, got {}",
            p.gamma
        )));
    }
    if p.grid.len() < 2 {
        return Err(Error::InvalidParameter("epsilon grid needs at least two values".into()));
    }
    if (0..3).any(|i| !(p.hi[i] > p.lo[i])) {
        return Err(Error::InvalidGeometry("box corners must satisfy lo < hi".into()));
    }
    let width = p.hi[0] - p.lo[0];
    if let Some(eps) = p.grid.iter().find(|e| !(**e > 0.0) || **e > width) {
        return Err(Error::Containment(format!(
            "support of width {eps} does not fit in a box of width {width}"
        )));
    }
    let b1 = p.hi[0];
    let integrand = p.f0.dot_poly(&p.u);
    let psi = bump();
    let lo = [-1.0, p.lo[1], p.lo[2]];
    let hi = [0.0, p.hi[1], p.hi[2]];
    let face = |q: &Poly| {
        q.restrict(0, b1)
            .integrate_box([0.0, p.lo[1], p.lo[2]], [1.0, p.hi[1], p.hi[2]])
    };
    let reference = match p.gamma {
        1 => face(&integrand),
        _ => -face(&p.f0.dot_poly(&p.u.partial(0))),
    };
    let mut r = RateReport::new(&format!("mollifier_limit_gamma{}", p.gamma), "epsilon");
    let mut residuals = Vec::new();
    let mut largest: f64 = 0.0;
    for &eps in &p.grid {
        let q = integrand.compose(&[Poly::affine(b1, [eps, 0.0, 0.0]), Poly::var(1), Poly::var(2)]);
        let measured = match p.gamma {
            1 => (&psi * &q).integrate_box(lo, hi),
            // ∫ψ′Q = −∫ψ Q_s, exact for U independent of x1
            _ => -(&psi * &q.partial(0)).integrate_box(lo, hi) / eps,
        };
        let res = (measured - reference).abs();
        largest = largest.max(measured.abs());
        residuals.push(res);
        r.row(eps, measured, reference, res);
    }
    if p.u.degree() == 0 && p.gamma == 2 {
        r.zero("total force for constant U", largest);
    }
    let floor = 1e-13 * reference.abs().max(1.0);
    r.fit_with_floor("residual", &residuals, CheckKind::AtLeast { min: 0.9 }, floor);
    Ok(r)
}

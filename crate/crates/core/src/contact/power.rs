use super::StressState;
use crate::error::Result;
use crate::geometry::{AdmissibleDomain, EdgePoint, SurfacePoint};
use crate::tensor::{div_t2, div_vec, grad, Poly, PolyField, Vec3};
use serde::Serialize;

/// Surface force, edge force and (optionally) double traction on the boundary
/// of a domain.
pub trait ContactDensities {
    fn surface_force(&self, dom: &AdmissibleDomain, p: &SurfacePoint) -> Result<Vec3>;
    fn edge_force(&self, p: &EdgePoint) -> Result<Vec3>;
    /// `None` when the densities carry no double traction.
    fn normal_traction(&self, dom: &AdmissibleDomain, p: &SurfacePoint) -> Result<Option<Vec3>>;
    /// Polynomial degree of the densities in `x`, for quadrature selection.
    fn degree(&self) -> usize;
}

impl ContactDensities for StressState {
    fn surface_force(&self, dom: &AdmissibleDomain, p: &SurfacePoint) -> Result<Vec3> {
        StressState::surface_force(self, &dom.faces[p.face], p)
    }

    fn edge_force(&self, p: &EdgePoint) -> Result<Vec3> {
        Ok(StressState::edge_force(self, p.x, &p.dihedral))
    }

    fn normal_traction(&self, _dom: &AdmissibleDomain, p: &SurfacePoint) -> Result<Option<Vec3>> {
        StressState::normal_traction(self, p.x, p.normal).map(Some)
    }

    fn degree(&self) -> usize {
        StressState::degree(self)
    }
}

/// The three boundary integrals of the power of contact actions.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PowerBreakdown {
    /// `∫_S F·U ds`
    pub surface_f: f64,
    /// `∫_L ℱ·U dl`
    pub edge: f64,
    /// `∫_S G·∂U/∂n ds`
    pub normal_g: f64,
    pub total: f64,
    /// `∫ F·U + G·∂U/∂n` over each face, in face order.
    pub per_face: Vec<f64>,
    /// `∫ ℱ·U` over each edge, in edge order.
    pub per_edge: Vec<f64>,
}

/// Power expended by `dens` on the velocity `u` over the boundary of `dom`.
pub fn power<D: ContactDensities + ?Sized>(
    dens: &D,
    dom: &AdmissibleDomain,
    u: &PolyField<Vec3>,
) -> Result<PowerBreakdown> {
    let gu = grad(u);
    let degree = dens.degree() + u.degree();
    let mut out = PowerBreakdown::default();
    for fi in 0..dom.faces.len() {
        let mut err = None;
        let v = dom.integrate_face(fi, degree, |p| {
            let uu = u.eval(p.x);
            let f = match dens.surface_force(dom, p) {
                Ok(f) => f,
                Err(e) => {
                    err.get_or_insert(e);
                    return Vec3::ZERO;
                }
            };
            let g = match dens.normal_traction(dom, p) {
                Ok(Some(g)) => g.dot(gu.eval(p.x).dot(p.normal)),
                Ok(None) => 0.0,
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            };
            Vec3::new(f.dot(uu), g, 0.0)
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        out.surface_f += v[0];
        out.normal_g += v[1];
        out.per_face.push(v[0] + v[1]);
    }
    for ei in 0..dom.edges.len() {
        let mut err = None;
        let v = dom.integrate_edge(ei, degree, |p| match dens.edge_force(p) {
            Ok(f) => f.dot(u.eval(p.x)),
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        out.edge += v;
        out.per_edge.push(v);
    }
    out.total = out.surface_f + out.edge + out.normal_g;
    Ok(out)
}

/// Power of the densities derived from `s`.
pub fn contact_power(s: &StressState, dom: &AdmissibleDomain, u: &PolyField<Vec3>) -> Result<PowerBreakdown> {
    power(s, dom, u)
}

/// Power of an arbitrary ansatz, integrated as given.
pub fn raw_power<D: ContactDensities + ?Sized>(
    raw: &D,
    dom: &AdmissibleDomain,
    u: &PolyField<Vec3>,
) -> Result<PowerBreakdown> {
    power(raw, dom, u)
}

/// Resultant `∫_S F ds + ∫_L ℱ dl`.
pub fn contact_force<D: ContactDensities + ?Sized>(dens: &D, dom: &AdmissibleDomain) -> Result<Vec3> {
    let mut acc = Vec3::ZERO;
    let mut err = None;
    let degree = dens.degree();
    for fi in 0..dom.faces.len() {
        acc += dom.integrate_face(fi, degree, |p| {
            dens.surface_force(dom, p).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Vec3::ZERO
            })
        })?;
    }
    for ei in 0..dom.edges.len() {
        acc += dom.integrate_edge(ei, degree, |p| {
            dens.edge_force(p).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Vec3::ZERO
            })
        })?;
    }
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// `(div T)·U + T:∇U + div(∇U : C)` as a single polynomial.
pub fn bulk_density(s: &StressState, u: &PolyField<Vec3>) -> Poly {
    let t = s.stress();
    let gu = grad(u);
    let mut p = div_t2(t).dot_poly(u);
    for i in 0..3 {
        for j in 0..3 {
            p = &p + &(t.entry(i, j) * gu.entry(i, j));
        }
    }
    &p + div_vec(&super::interstitial_flux_field(s, u)).component(0)
}

/// `∫_V [(div T)·U + T:∇U + div(∇U : C)] dv`, exact on polyhedra.
pub fn bulk_power(s: &StressState, dom: &AdmissibleDomain, u: &PolyField<Vec3>) -> Result<f64> {
    dom.integrate_poly(&bulk_density(s, u))
}

/// Grid estimate of `sup |bulk density|` over the bounding box (20 points per
/// axis), times 1.01.
pub fn quasi_balance_constant(s: &StressState, dom: &AdmissibleDomain, u: &PolyField<Vec3>) -> f64 {
    let p = bulk_density(s, u);
    let (lo, hi) = dom.bounding_box();
    let k = 20;
    let mut m = 0.0_f64;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let f = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (k - 1) as f64;
                let x = [f(lo[0], hi[0], a), f(lo[1], hi[1], b), f(lo[2], hi[2], c)];
                m = m.max(p.eval(x).abs());
            }
        }
    }
    1.01 * m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_box;
    use crate::tensor::{Tensor2, Tensor3};

    fn cube() -> AdmissibleDomain {
        build_box(Vec3::ZERO, Vec3::new(1.0, 1.0, 1.0)).unwrap()
    }

    #[test]
    fn identity_stress_constant_velocity_has_zero_power() {
        let s = StressState::constant(Tensor2::identity(), Tensor3::ZERO);
        let u = PolyField::constant(Vec3::new(1.0, -2.0, 0.5));
        let p = contact_power(&s, &cube(), &u).unwrap();
        assert!(p.total.abs() < 1e-15);
    }

    #[test]
    fn identity_stress_identity_velocity() {
        let s = StressState::constant(Tensor2::identity(), Tensor3::ZERO);
        let u = PolyField::identity();
        let p = contact_power(&s, &cube(), &u).unwrap();
        assert!((p.total - 3.0).abs() < 1e-14);
        assert!((bulk_power(&s, &cube(), &u).unwrap() - 3.0).abs() < 1e-14);
        assert_eq!(p.total, p.surface_f + p.edge + p.normal_g);
    }

    #[test]
    fn constant_hyperstress_on_cube() {
        let mut c = Tensor3::ZERO;
        c.set(0, 0, 1, 1.0);
        c.set(2, 1, 0, -2.0);
        let s = StressState::constant(Tensor2::ZERO, c);
        let u = PolyField::identity();
        let p = contact_power(&s, &cube(), &u).unwrap();
        let b = bulk_power(&s, &cube(), &u).unwrap();
        assert!((p.total - b).abs() < 1e-14);
    }
}

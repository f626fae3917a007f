use super::quadrature::{integrate_triangle, integrate_unit_square, points_for_degree, Quantity, MAX_POINTS};
use crate::error::{Error, Result};
use crate::tensor::{Poly, Vec3};

/// Relative tolerance for coplanarity of planar polygon vertices.
pub const COPLANAR_TOL: f64 = 1e-10;

/// Planar polygon with a counter-clockwise vertex loop about its outward normal.
/// Simple non-convex loops are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarPolygon {
    verts: Vec<Vec3>,
    normal: Vec3,
    center: Vec3,
    area: f64,
}

impl PlanarPolygon {
    pub fn new(verts: Vec<Vec3>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::InvalidGeometry(format!(
                "polygon needs at least 3 vertices, got {}",
                verts.len()
            )));
        }
        // Newell's method: twice the vector area.
        let mut nv = Vec3::ZERO;
        for (i, &a) in verts.iter().enumerate() {
            let b = verts[(i + 1) % verts.len()];
            nv += a.cross(b);
        }
        let area = 0.5 * nv.norm();
        let diam = verts
            .iter()
            .flat_map(|a| verts.iter().map(move |b| (*a - *b).norm()))
            .fold(0.0, f64::max);
        if !(area > 1e-14 * diam * diam) || !area.is_finite() {
            return Err(Error::InvalidGeometry("polygon has no orientation".into()));
        }
        let normal = nv * (1.0 / nv.norm());
        let off = verts
            .iter()
            .map(|v| (*v - verts[0]).dot(normal).abs())
            .fold(0.0, f64::max);
        if off > COPLANAR_TOL * diam {
            return Err(Error::InvalidGeometry(format!(
                "polygon vertices not coplanar (offset {off:e})"
            )));
        }
        let center = verts.iter().fold(Vec3::ZERO, |acc, v| acc + *v) * (1.0 / verts.len() as f64);
        Ok(PlanarPolygon {
            verts,
            normal,
            center,
            area,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.verts
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Boundary segments `(a, b, ν)` with `ν` the in-plane outward normal.
    pub fn boundary(&self) -> Vec<(Vec3, Vec3, Vec3)> {
        let n = self.verts.len();
        (0..n)
            .map(|i| {
                let a = self.verts[i];
                let b = self.verts[(i + 1) % n];
                let t = (b - a) * (1.0 / (b - a).norm());
                (a, b, t.cross(self.normal))
            })
            .collect()
    }

    /// Signed fan from the vertex centroid; exact for polynomials of `degree`
    /// even on non-convex loops.
    pub fn integrate<Q: Quantity>(&self, degree: usize, mut f: impl FnMut(Vec3) -> Q) -> Result<Q> {
        let n = self.verts.len();
        let c = self.center;
        let mut acc = Q::zero();
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            let s = (a - c).cross(b - c).dot(self.normal);
            if s == 0.0 {
                continue;
            }
            acc = acc + integrate_triangle([c, a, b], s.signum(), degree, &mut f)?;
        }
        Ok(acc)
    }

    fn map(&self, scale: f64, offset: Vec3) -> Self {
        PlanarPolygon {
            verts: self.verts.iter().map(|v| *v * scale + offset).collect(),
            normal: self.normal,
            center: self.center * scale + offset,
            area: self.area * scale * scale,
        }
    }
}

/// Polynomial vector in two parameters `(s, t)`, stored as polynomials in
/// axes 0 and 1.
pub type ParamMap = [Poly; 3];

pub(crate) fn eval_map(m: &ParamMap, s: f64, t: f64) -> Vec3 {
    Vec3::new(m[0].eval([s, t, 0.0]), m[1].eval([s, t, 0.0]), m[2].eval([s, t, 0.0]))
}

fn d_map(m: &ParamMap, axis: usize) -> ParamMap {
    std::array::from_fn(|i| m[i].partial(axis))
}

/// Differential data of a patch at a parameter point.
#[derive(Clone, Copy, Debug)]
pub struct PatchPoint {
    pub x: Vec3,
    pub r_s: Vec3,
    pub r_t: Vec3,
    pub r_ss: Vec3,
    pub r_st: Vec3,
    pub r_tt: Vec3,
    /// `σ r_s × r_t`, unnormalized.
    pub big_n: Vec3,
    pub normal: Vec3,
}

/// Curved face `r(s, t)` over the unit square, with outward normal
/// `σ (r_s × r_t)/|r_s × r_t|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricPatch {
    r: ParamMap,
    r_s: ParamMap,
    r_t: ParamMap,
    r_ss: ParamMap,
    r_st: ParamMap,
    r_tt: ParamMap,
    sigma: f64,
}

impl ParametricPatch {
    pub fn new(r: ParamMap, sigma: f64) -> Result<Self> {
        if sigma != 1.0 && sigma != -1.0 {
            return Err(Error::InvalidGeometry(format!(
                "patch orientation must be ±1, got {sigma}"
            )));
        }
        if r.iter().any(|p| p.degree_in(2) > 0) {
            return Err(Error::InvalidGeometry("patch map depends on a third parameter".into()));
        }
        let r_s = d_map(&r, 0);
        let r_t = d_map(&r, 1);
        let patch = ParametricPatch {
            r_ss: d_map(&r_s, 0),
            r_st: d_map(&r_s, 1),
            r_tt: d_map(&r_t, 1),
            r,
            r_s,
            r_t,
            sigma,
        };
        for i in 0..=4 {
            for j in 0..=4 {
                let (s, t) = (i as f64 / 4.0, j as f64 / 4.0);
                let n = eval_map(&patch.r_s, s, t).cross(eval_map(&patch.r_t, s, t));
                if !(n.norm() > 0.0) {
                    return Err(Error::InvalidGeometry(format!(
                        "patch has no orientation at ({s}, {t})"
                    )));
                }
            }
        }
        Ok(patch)
    }

    /// Graph `x3 = φ(x1, x2)` over the rectangle `[lo, hi]`.
    pub fn graph(phi: &Poly, lo: [f64; 2], hi: [f64; 2], sigma: f64) -> Result<Self> {
        if phi.degree_in(2) > 0 {
            return Err(Error::InvalidGeometry("height depends on x3".into()));
        }
        let x1 = Poly::affine(lo[0], [hi[0] - lo[0], 0.0, 0.0]);
        let x2 = Poly::affine(lo[1], [0.0, hi[1] - lo[1], 0.0]);
        let z = phi.compose(&[x1.clone(), x2.clone(), Poly::zero()]);
        ParametricPatch::new([x1, x2, z], sigma)
    }

    /// Ruled surface `(1 − t) a(s) + t b(s)` between two curves in `s`.
    pub fn ruled(a: &ParamMap, b: &ParamMap, sigma: f64) -> Result<Self> {
        let t = Poly::var(1);
        let one_minus_t = Poly::affine(1.0, [0.0, -1.0, 0.0]);
        let r = std::array::from_fn(|i| &(&a[i] * &one_minus_t) + &(&b[i] * &t));
        ParametricPatch::new(r, sigma)
    }

    pub fn map(&self) -> &ParamMap {
        &self.r
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn degree(&self) -> usize {
        self.r.iter().map(Poly::degree).max().unwrap_or(0).max(1)
    }

    pub fn point(&self, s: f64, t: f64) -> PatchPoint {
        let r_s = eval_map(&self.r_s, s, t);
        let r_t = eval_map(&self.r_t, s, t);
        let big_n = r_s.cross(r_t) * self.sigma;
        PatchPoint {
            x: eval_map(&self.r, s, t),
            r_s,
            r_t,
            r_ss: eval_map(&self.r_ss, s, t),
            r_st: eval_map(&self.r_st, s, t),
            r_tt: eval_map(&self.r_tt, s, t),
            big_n,
            normal: big_n * (1.0 / big_n.norm()),
        }
    }

    /// Tensor Gauss rule with `n` points per parameter direction.
    pub fn integrate_with<Q: Quantity>(&self, n: usize, mut f: impl FnMut(f64, f64, &PatchPoint) -> Q) -> Result<Q> {
        integrate_unit_square(n, |s, t| {
            let p = self.point(s, t);
            f(s, t, &p) * p.big_n.norm()
        })
    }

    fn map_affine(&self, scale: f64, offset: Vec3) -> Self {
        let r: ParamMap = std::array::from_fn(|i| &self.r[i].scale(scale) + &Poly::constant(offset[i]));
        ParametricPatch::new(r, self.sigma).expect("similarity preserves validity")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FaceKind {
    Planar(PlanarPolygon),
    Patch(ParametricPatch),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub kind: FaceKind,
    pub label: Option<String>,
}

/// A quadrature point on a face.
#[derive(Clone, Copy, Debug)]
pub struct SurfacePoint {
    pub face: usize,
    pub x: Vec3,
    pub normal: Vec3,
    /// Surface parameters on curved faces.
    pub params: Option<[f64; 2]>,
}

impl Face {
    pub fn planar(verts: Vec<Vec3>) -> Result<Self> {
        Ok(Face {
            kind: FaceKind::Planar(PlanarPolygon::new(verts)?),
            label: None,
        })
    }

    pub fn patch(p: ParametricPatch) -> Self {
        Face {
            kind: FaceKind::Patch(p),
            label: None,
        }
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn is_planar(&self) -> bool {
        matches!(self.kind, FaceKind::Planar(_))
    }

    /// Outward normal on a planar face; `None` on curved faces.
    pub fn plane_normal(&self) -> Option<Vec3> {
        match &self.kind {
            FaceKind::Planar(p) => Some(p.normal()),
            FaceKind::Patch(_) => None,
        }
    }

    /// Points per direction used on curved faces for an integrand of `degree`.
    pub fn patch_points(patch: &ParametricPatch, degree: usize, curved_order: usize) -> usize {
        let k = patch.degree();
        curved_order.max(points_for_degree(degree * k + 2 * k)).min(MAX_POINTS)
    }

    /// Integral of `f` over the face. Exact for planar faces and polynomial
    /// integrands of `degree`; convergent on curved faces.
    pub fn integrate<Q: Quantity>(
        &self,
        index: usize,
        degree: usize,
        curved_order: usize,
        mut f: impl FnMut(&SurfacePoint) -> Q,
    ) -> Result<Q> {
        match &self.kind {
            FaceKind::Planar(p) => {
                let normal = p.normal();
                p.integrate(degree, |x| {
                    f(&SurfacePoint {
                        face: index,
                        x,
                        normal,
                        params: None,
                    })
                })
            }
            FaceKind::Patch(patch) => {
                let n = Face::patch_points(patch, degree, curved_order);
                patch.integrate_with(n, |s, t, pp| {
                    f(&SurfacePoint {
                        face: index,
                        x: pp.x,
                        normal: pp.normal,
                        params: Some([s, t]),
                    })
                })
            }
        }
    }

    pub fn area(&self, curved_order: usize) -> Result<f64> {
        match &self.kind {
            FaceKind::Planar(p) => Ok(p.area()),
            FaceKind::Patch(_) => self.integrate(0, 0, curved_order, |_| 1.0),
        }
    }

    /// Outward normal at a surface point, given its parameters on curved faces.
    pub fn normal_at(&self, params: Option<[f64; 2]>) -> Result<Vec3> {
        match (&self.kind, params) {
            (FaceKind::Planar(p), _) => Ok(p.normal()),
            (FaceKind::Patch(patch), Some([s, t])) => Ok(patch.point(s, t).normal),
            (FaceKind::Patch(_), None) => Err(Error::InvalidGeometry(
                "curved face queried without surface parameters".into(),
            )),
        }
    }

    pub(crate) fn map_affine(&self, scale: f64, offset: Vec3) -> Self {
        let kind = match &self.kind {
            FaceKind::Planar(p) => FaceKind::Planar(p.map(scale, offset)),
            FaceKind::Patch(p) => FaceKind::Patch(p.map_affine(scale, offset)),
        };
        Face {
            kind,
            label: self.label.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> PlanarPolygon {
        PlanarPolygon::new(vec![
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(1.0, 0.0, 1.0),
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(0.0, 1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn square_area_and_normal() {
        let sq = unit_square();
        assert_eq!(sq.normal(), Vec3::basis(2));
        assert_eq!(sq.area(), 1.0);
        let a = sq.integrate(0, |_| 1.0).unwrap();
        assert!((a - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nonconvex_polygon_integrates_exactly() {
        // L-shaped polygon in the plane x3 = 0, area 3.
        let l = PlanarPolygon::new(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(2.0, 0.0, 0.0),
            Vec3::new(2.0, 1.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(1.0, 2.0, 0.0),
            Vec3::new(0.0, 2.0, 0.0),
        ])
        .unwrap();
        assert!((l.area() - 3.0).abs() < 1e-15);
        // ∫ x1 over the L = ∫_{[0,2]x[0,1]} x1 + ∫_{[0,1]x[1,2]} x1 = 2 + 1/2
        let m = l.integrate(1, |x| x[0]).unwrap();
        assert!((m - 2.5).abs() < 1e-14);
    }

    #[test]
    fn non_coplanar_rejected() {
        let r = PlanarPolygon::new(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.1),
            Vec3::new(0.0, 1.0, 0.0),
        ]);
        assert!(matches!(r, Err(Error::InvalidGeometry(_))));
        let collinear = PlanarPolygon::new(vec![Vec3::ZERO, Vec3::basis(0), Vec3::basis(0) * 2.0]);
        assert!(collinear.is_err());
    }

    #[test]
    fn boundary_normals_point_outward() {
        let sq = unit_square();
        let b = sq.boundary();
        assert_eq!(b[0].2, -Vec3::basis(1));
        assert_eq!(b[1].2, Vec3::basis(0));
    }

    #[test]
    fn graph_patch_of_flat_height_is_a_square() {
        let p = ParametricPatch::graph(&Poly::constant(2.0), [0.0, 0.0], [1.0, 2.0], 1.0).unwrap();
        let pt = p.point(0.5, 0.5);
        assert_eq!(pt.normal, Vec3::basis(2));
        assert_eq!(pt.x, Vec3::new(0.5, 1.0, 2.0));
        let a = p.integrate_with(2, |_, _, _| 1.0).unwrap();
        assert!((a - 2.0).abs() < 1e-14);
    }

    #[test]
    fn ruled_patch_orientation() {
        let a = [Poly::var(0), Poly::zero(), Poly::zero()];
        let b = [Poly::var(0), Poly::zero(), Poly::constant(1.0)];
        let p = ParametricPatch::ruled(&a, &b, 1.0).unwrap();
        // r_s = e1, r_t = e3, r_s × r_t = −e2
        assert_eq!(p.point(0.3, 0.3).normal, -Vec3::basis(1));
    }

    #[test]
    fn bad_orientation_sign_rejected() {
        let r = [Poly::var(0), Poly::var(1), Poly::zero()];
        assert!(ParametricPatch::new(r, 0.5).is_err());
    }
}

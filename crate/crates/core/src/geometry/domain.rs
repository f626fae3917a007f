use super::dihedral::DihedralShape;
use super::edge::{Edge, EdgeCurve, EdgePoint, EdgeSide};
use super::face::{Face, FaceKind, SurfacePoint};
use super::quadrature::{integrate_tetrahedron, integrate_unit_cube, points_for_degree, Quantity, MAX_POINTS};
use crate::error::{Error, Result};
use crate::tensor::{Poly, Vec3};
use std::collections::BTreeMap;

/// Default number of Gauss points per direction on curved faces and cells.
pub const DEFAULT_CURVED_ORDER: usize = 8;

/// Piece of the interior used for volume quadrature.
#[derive(Clone, Debug, PartialEq)]
pub enum VolumeCell {
    /// Signed tetrahedron; negatively oriented cells subtract.
    Tet([Vec3; 4]),
    /// Polynomial image of the unit cube with positive Jacobian.
    Mapped(MappedCell),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MappedCell {
    map: [Poly; 3],
    jac: [[Poly; 3]; 3],
}

impl MappedCell {
    pub fn new(map: [Poly; 3]) -> Result<Self> {
        let jac = std::array::from_fn(|i| std::array::from_fn(|a| map[i].partial(a)));
        let cell = MappedCell { map, jac };
        for p in [[0.5, 0.5, 0.5], [0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [0.0, 1.0, 0.0]] {
            if !(cell.jacobian(p) > 0.0) {
                return Err(Error::InvalidGeometry(
                    "mapped volume cell is not positively oriented".into(),
                ));
            }
        }
        Ok(cell)
    }

    pub fn point(&self, p: [f64; 3]) -> Vec3 {
        Vec3::new(self.map[0].eval(p), self.map[1].eval(p), self.map[2].eval(p))
    }

    pub fn jacobian(&self, p: [f64; 3]) -> f64 {
        let c = |a: usize| Vec3::new(self.jac[0][a].eval(p), self.jac[1][a].eval(p), self.jac[2][a].eval(p));
        c(0).dot(c(1).cross(c(2)))
    }

    pub fn degree(&self) -> usize {
        self.map.iter().map(Poly::degree).max().unwrap_or(1).max(1)
    }

    fn map_affine(&self, scale: f64, offset: Vec3) -> Self {
        MappedCell::new(std::array::from_fn(|i| {
            &self.map[i].scale(scale) + &Poly::constant(offset[i])
        }))
        .expect("positive similarity keeps orientation")
    }
}

/// Closed region bounded by faces meeting along edges, with a volume
/// decomposition for quadrature.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleDomain {
    pub faces: Vec<Face>,
    pub edges: Vec<Edge>,
    pub cells: Vec<VolumeCell>,
    pub label: String,
    pub curved_order: usize,
}

impl AdmissibleDomain {
    /// Polyhedron from vertex positions and counter-clockwise (outward) face
    /// loops. Edges are found by matching opposite half-edges.
    pub fn from_polyhedron(vertices: &[Vec3], loops: &[Vec<usize>], label: &str) -> Result<Self> {
        let mut faces = Vec::with_capacity(loops.len());
        for (fi, lp) in loops.iter().enumerate() {
            if lp.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidGeometry(format!("face {fi} references a missing vertex")));
            }
            let face = Face::planar(lp.iter().map(|&v| vertices[v]).collect())
                .map_err(|e| Error::InvalidGeometry(format!("face {fi}: {e}")))?;
            faces.push(face);
        }

        let mut half: BTreeMap<(usize, usize), Vec<(usize, usize, usize)>> = BTreeMap::new();
        for (fi, lp) in loops.iter().enumerate() {
            for k in 0..lp.len() {
                let (a, b) = (lp[k], lp[(k + 1) % lp.len()]);
                if a == b {
                    return Err(Error::InvalidGeometry(format!("face {fi} repeats vertex {a}")));
                }
                half.entry((a.min(b), a.max(b))).or_default().push((fi, a, b));
            }
        }
        let mut edges = Vec::with_capacity(half.len());
        for (key, hs) in &half {
            if hs.len() != 2 || hs[0].1 != hs[1].2 || hs[0].0 == hs[1].0 {
                return Err(Error::InvalidGeometry(format!(
                    "edge {key:?} is not shared by exactly two consistently oriented faces"
                )));
            }
            let (first, second) = if hs[0].0 < hs[1].0 {
                (hs[0], hs[1])
            } else {
                (hs[1], hs[0])
            };
            let curve = EdgeCurve::Segment {
                a: vertices[first.1],
                b: vertices[first.2],
            };
            edges.push(Edge::new(
                curve,
                1.0,
                [EdgeSide::planar(first.0), EdgeSide::planar(second.0)],
            ));
        }

        let n = vertices.len() as f64;
        let o = vertices.iter().fold(Vec3::ZERO, |acc, v| acc + *v) * (1.0 / n);
        let mut cells = Vec::new();
        for lp in loops {
            let c = lp.iter().fold(Vec3::ZERO, |acc, &v| acc + vertices[v]) * (1.0 / lp.len() as f64);
            for k in 0..lp.len() {
                let tet = [o, c, vertices[lp[k]], vertices[lp[(k + 1) % lp.len()]]];
                if (tet[1] - tet[0]).dot((tet[2] - tet[1]).cross(tet[3] - tet[2])) != 0.0 {
                    cells.push(VolumeCell::Tet(tet));
                }
            }
        }

        let dom = AdmissibleDomain {
            faces,
            edges,
            cells,
            label: label.to_string(),
            curved_order: DEFAULT_CURVED_ORDER,
        };
        dom.validate()?;
        Ok(dom)
    }

    /// Checks dihedra along every edge, boundary closure and the agreement of
    /// the cell volume with the boundary flux of `x/3`.
    pub fn validate(&self) -> Result<()> {
        for (i, e) in self.edges.iter().enumerate() {
            for s in &e.sides {
                if s.face >= self.faces.len() {
                    return Err(Error::InvalidGeometry(format!("edge {i} references a missing face")));
                }
            }
            for u in [0.0, 0.5, 1.0] {
                e.dihedral_at(&self.faces, u).map_err(|err| match err {
                    Error::DegenerateDihedral(m) => Error::DegenerateDihedral(format!("edge {i}: {m}")),
                    other => Error::InvalidGeometry(format!("edge {i}: {other}")),
                })?;
            }
        }
        let area = self.surface_area()?;
        let closure = self.integrate_boundary(0, |p| p.normal)?;
        let tol = if self.is_polyhedral() { 1e-12 } else { 1e-9 };
        if closure.max_abs() > tol * area {
            return Err(Error::InvalidGeometry(format!(
                "boundary is not closed: |∫ n ds| = {:e}",
                closure.max_abs()
            )));
        }
        let v = self.volume()?;
        let flux = self.integrate_boundary(1, |p| p.x.dot(p.normal) / 3.0)?;
        if !(v > 0.0) || (v - flux).abs() > 1e-9 * v {
            return Err(Error::InvalidGeometry(format!(
                "volume cells ({v:e}) disagree with the enclosed volume ({flux:e})"
            )));
        }
        Ok(())
    }

    pub fn is_polyhedral(&self) -> bool {
        self.faces.iter().all(Face::is_planar)
            && self.edges.iter().all(Edge::is_straight)
            && self.cells.iter().all(|c| matches!(c, VolumeCell::Tet(_)))
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// `∫_V f dv`, exact for polynomial `f` of `degree` on polyhedra and
    /// polynomially mapped cells.
    pub fn integrate_volume<Q: Quantity>(&self, degree: usize, mut f: impl FnMut(Vec3) -> Q) -> Result<Q> {
        let mut acc = Q::zero();
        for cell in &self.cells {
            acc = acc
                + match cell {
                    VolumeCell::Tet(t) => integrate_tetrahedron(*t, degree, &mut f)?,
                    VolumeCell::Mapped(m) => {
                        let k = m.degree();
                        let n = self.curved_order.max(points_for_degree(degree * k + 3 * k));
                        if n > MAX_POINTS {
                            return Err(Error::QuadratureDegree {
                                degree,
                                max: 2 * MAX_POINTS - 1,
                            });
                        }
                        integrate_unit_cube(n, |s, t, w| {
                            let p = [s, t, w];
                            f(m.point(p)) * m.jacobian(p)
                        })?
                    }
                };
        }
        Ok(acc)
    }

    /// Exact volume integral of a polynomial.
    pub fn integrate_poly(&self, p: &Poly) -> Result<f64> {
        self.integrate_volume(p.degree(), |x| p.eval(x.0))
    }

    pub fn integrate_face<Q: Quantity>(
        &self,
        index: usize,
        degree: usize,
        f: impl FnMut(&SurfacePoint) -> Q,
    ) -> Result<Q> {
        self.faces[index].integrate(index, degree, self.curved_order, f)
    }

    /// Sum of face integrals in face order.
    pub fn integrate_boundary<Q: Quantity>(&self, degree: usize, mut f: impl FnMut(&SurfacePoint) -> Q) -> Result<Q> {
        let mut acc = Q::zero();
        for i in 0..self.faces.len() {
            acc = acc + self.integrate_face(i, degree, &mut f)?;
        }
        Ok(acc)
    }

    pub fn integrate_edge<Q: Quantity>(
        &self,
        index: usize,
        degree: usize,
        f: impl FnMut(&EdgePoint) -> Q,
    ) -> Result<Q> {
        self.edges[index].integrate(index, &self.faces, degree, self.curved_order, f)
    }

    /// Sum of edge integrals in edge order.
    pub fn integrate_edges<Q: Quantity>(&self, degree: usize, mut f: impl FnMut(&EdgePoint) -> Q) -> Result<Q> {
        let mut acc = Q::zero();
        for i in 0..self.edges.len() {
            acc = acc + self.integrate_edge(i, degree, &mut f)?;
        }
        Ok(acc)
    }

    pub fn volume(&self) -> Result<f64> {
        self.integrate_volume(0, |_| 1.0)
    }

    pub fn surface_area(&self) -> Result<f64> {
        self.faces.iter().map(|f| f.area(self.curved_order)).sum()
    }

    pub fn edge_length(&self, index: usize) -> Result<f64> {
        self.edges[index].length(self.curved_order)
    }

    /// Dihedral shape at the midpoint of an edge.
    pub fn edge_shape(&self, index: usize) -> Result<DihedralShape> {
        self.edges[index].dihedral_at(&self.faces, 0.5)
    }

    pub fn face_by_label(&self, label: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.label.as_deref() == Some(label))
    }

    pub fn edges_by_label(&self, label: &str) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].label.as_deref() == Some(label))
            .collect()
    }

    /// Axis-aligned bounding box of the volume cells.
    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = -lo;
        let mut add = |p: Vec3| {
            for i in 0..3 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        };
        for cell in &self.cells {
            match cell {
                VolumeCell::Tet(t) => t.iter().for_each(|&p| add(p)),
                VolumeCell::Mapped(m) => {
                    let k = 8;
                    for a in 0..=k {
                        for b in 0..=k {
                            for c in 0..=k {
                                let p = [a as f64 / k as f64, b as f64 / k as f64, c as f64 / k as f64];
                                add(m.point(p));
                            }
                        }
                    }
                }
            }
        }
        (lo, hi)
    }

    /// Image under `x ↦ center + ratio (x − center)`.
    pub fn homothety(&self, ratio: f64, center: Vec3) -> Result<Self> {
        if !(ratio > 0.0) || !ratio.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "homothety ratio must be positive, got {ratio}"
            )));
        }
        Ok(self.map_affine(ratio, center * (1.0 - ratio)))
    }

    /// Image under `x ↦ x + shift`.
    pub fn translated(&self, shift: Vec3) -> Self {
        self.map_affine(1.0, shift)
    }

    fn map_affine(&self, scale: f64, offset: Vec3) -> Self {
        AdmissibleDomain {
            faces: self.faces.iter().map(|f| f.map_affine(scale, offset)).collect(),
            edges: self.edges.iter().map(|e| e.map_affine(scale, offset)).collect(),
            cells: self
                .cells
                .iter()
                .map(|c| match c {
                    VolumeCell::Tet(t) => VolumeCell::Tet(t.map(|p| p * scale + offset)),
                    VolumeCell::Mapped(m) => VolumeCell::Mapped(m.map_affine(scale, offset)),
                })
                .collect(),
            label: self.label.clone(),
            curved_order: self.curved_order,
        }
    }

    /// Face kinds and edge kinds, for diagnostics.
    pub fn counts(&self) -> (usize, usize, usize) {
        let curved = self
            .faces
            .iter()
            .filter(|f| matches!(f.kind, FaceKind::Patch(_)))
            .count();
        (self.faces.len(), curved, self.edges.len())
    }
}

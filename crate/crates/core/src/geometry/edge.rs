use super::dihedral::{make_dihedral, DihedralShape};
use super::face::Face;
use super::quadrature::{integrate_unit_interval, points_for_degree, Quantity, MAX_POINTS};
use crate::error::{Error, Result};
use crate::tensor::{Poly, Vec3};

/// Geometry of an edge, parametrized by `u ∈ [0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum EdgeCurve {
    Segment {
        a: Vec3,
        b: Vec3,
    },
    /// Polynomial curve in `u` (stored in axis 0), degree at most 3.
    Curve {
        r: [Poly; 3],
    },
}

impl EdgeCurve {
    pub fn point(&self, u: f64) -> Vec3 {
        match self {
            EdgeCurve::Segment { a, b } => *a + (*b - *a) * u,
            EdgeCurve::Curve { r } => Vec3::new(
                r[0].eval([u, 0.0, 0.0]),
                r[1].eval([u, 0.0, 0.0]),
                r[2].eval([u, 0.0, 0.0]),
            ),
        }
    }

    pub fn derivative(&self, u: f64) -> Vec3 {
        match self {
            EdgeCurve::Segment { a, b } => *b - *a,
            EdgeCurve::Curve { r } => Vec3::new(
                r[0].partial(0).eval([u, 0.0, 0.0]),
                r[1].partial(0).eval([u, 0.0, 0.0]),
                r[2].partial(0).eval([u, 0.0, 0.0]),
            ),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            EdgeCurve::Segment { .. } => 1,
            EdgeCurve::Curve { r } => r.iter().map(Poly::degree).max().unwrap_or(0).max(1),
        }
    }

    fn map_affine(&self, scale: f64, offset: Vec3) -> Self {
        match self {
            EdgeCurve::Segment { a, b } => EdgeCurve::Segment {
                a: *a * scale + offset,
                b: *b * scale + offset,
            },
            EdgeCurve::Curve { r } => EdgeCurve::Curve {
                r: std::array::from_fn(|i| &r[i].scale(scale) + &Poly::constant(offset[i])),
            },
        }
    }
}

/// One of the two faces meeting along an edge. On curved faces the edge is
/// the parameter line `(s, t) = p0 + u (p1 − p0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSide {
    pub face: usize,
    pub params: Option<([f64; 2], [f64; 2])>,
}

impl EdgeSide {
    pub fn planar(face: usize) -> Self {
        EdgeSide { face, params: None }
    }

    pub fn curved(face: usize, p0: [f64; 2], p1: [f64; 2]) -> Self {
        EdgeSide {
            face,
            params: Some((p0, p1)),
        }
    }

    fn params_at(&self, u: f64) -> Option<[f64; 2]> {
        self.params
            .map(|(p0, p1)| [p0[0] + u * (p1[0] - p0[0]), p0[1] + u * (p1[1] - p0[1])])
    }
}

/// Edge between `sides[0]` (face 1) and `sides[1]` (face 2). The unit tangent
/// `τ` is `orientation · dr/du`, chosen so that face 1 lies to the left of
/// `τ` when viewed from its outward normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub curve: EdgeCurve,
    pub orientation: f64,
    pub sides: [EdgeSide; 2],
    pub label: Option<String>,
}

/// A quadrature point on an edge.
#[derive(Clone, Copy, Debug)]
pub struct EdgePoint {
    pub edge: usize,
    pub x: Vec3,
    pub dihedral: DihedralShape,
}

impl Edge {
    pub fn new(curve: EdgeCurve, orientation: f64, sides: [EdgeSide; 2]) -> Self {
        Edge {
            curve,
            orientation,
            sides,
            label: None,
        }
    }

    /// Dihedral shape of the boundary at curve parameter `u`.
    pub fn dihedral_at(&self, faces: &[Face], u: f64) -> Result<DihedralShape> {
        let tau = (self.curve.derivative(u) * self.orientation).normalized()?;
        let n1 = faces[self.sides[0].face].normal_at(self.sides[0].params_at(u))?;
        let n2 = faces[self.sides[1].face].normal_at(self.sides[1].params_at(u))?;
        make_dihedral(n1, n2, tau)
    }

    pub fn is_straight(&self) -> bool {
        matches!(self.curve, EdgeCurve::Segment { .. })
    }

    /// Points used for an integrand of polynomial `degree`. Exact on segments.
    pub fn points(&self, degree: usize, curved_order: usize) -> usize {
        match &self.curve {
            EdgeCurve::Segment { .. } => points_for_degree(degree),
            EdgeCurve::Curve { .. } => {
                let k = self.curve.degree();
                curved_order.max(points_for_degree(degree * k + 2 * k))
            }
        }
    }

    pub fn integrate<Q: Quantity>(
        &self,
        index: usize,
        faces: &[Face],
        degree: usize,
        curved_order: usize,
        mut f: impl FnMut(&EdgePoint) -> Q,
    ) -> Result<Q> {
        let n = self.points(degree, curved_order);
        if n > MAX_POINTS {
            return Err(Error::QuadratureDegree {
                degree,
                max: 2 * MAX_POINTS - 1,
            });
        }
        // Each point needs its own dihedral, so errors are collected outside the closure.
        let mut err = None;
        let v = integrate_unit_interval(n, |u| {
            let speed = self.curve.derivative(u).norm();
            match self.dihedral_at(faces, u) {
                Ok(d) => {
                    f(&EdgePoint {
                        edge: index,
                        x: self.curve.point(u),
                        dihedral: d,
                    }) * speed
                }
                Err(e) => {
                    err.get_or_insert(e);
                    Q::zero()
                }
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    pub fn length(&self, curved_order: usize) -> Result<f64> {
        match &self.curve {
            EdgeCurve::Segment { a, b } => Ok((*b - *a).norm()),
            EdgeCurve::Curve { .. } => {
                integrate_unit_interval(curved_order.clamp(16, MAX_POINTS), |u| self.curve.derivative(u).norm())
            }
        }
    }

    pub(crate) fn map_affine(&self, scale: f64, offset: Vec3) -> Self {
        Edge {
            curve: self.curve.map_affine(scale, offset),
            orientation: self.orientation,
            sides: self.sides.clone(),
            label: self.label.clone(),
        }
    }
}

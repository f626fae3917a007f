//! Gauss–Legendre rules on `[0, 1]` and their collapsed (Duffy) products on
//! triangles and tetrahedra. A rule with `n` points per direction integrates
//! polynomials of degree `2n − 1` exactly in each collapsed coordinate, so a
//! rule is picked from the integrand's polynomial degree.

use crate::error::{Error, Result};
use crate::tensor::{Tensor2, Vec3};
use gauss_quad::legendre::GaussLegendre;
use std::num::NonZeroUsize;
use std::ops::{Add, Mul};
use std::sync::OnceLock;

/// Largest number of Gauss points per direction.
pub const MAX_POINTS: usize = 64;

/// Largest polynomial degree a simplex rule can integrate exactly.
pub const MAX_DEGREE: usize = 2 * MAX_POINTS - 3;

/// Values that can be accumulated by a quadrature rule.
pub trait Quantity: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
}

impl Quantity for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Quantity for Vec3 {
    fn zero() -> Self {
        Vec3::ZERO
    }
}

impl Quantity for Tensor2 {
    fn zero() -> Self {
        Tensor2::ZERO
    }
}

static RULES: OnceLock<Vec<Vec<(f64, f64)>>> = OnceLock::new();

/// Gauss–Legendre nodes and weights mapped to `[0, 1]`, sorted by node.
pub fn gauss_legendre(n: usize) -> Result<&'static [(f64, f64)]> {
    if n == 0 || n > MAX_POINTS {
        return Err(Error::QuadratureDegree {
            degree: 2 * n.saturating_sub(1),
            max: 2 * MAX_POINTS - 1,
        });
    }
    let rules = RULES.get_or_init(|| {
        (1..=MAX_POINTS)
            .map(|k| {
                let rule = GaussLegendre::new(NonZeroUsize::new(k).expect("k ≥ 1"));
                let mut pts: Vec<(f64, f64)> = rule
                    .as_node_weight_pairs()
                    .iter()
                    .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
                    .collect();
                pts.sort_by(|a, b| a.0.total_cmp(&b.0));
                pts
            })
            .collect()
    });
    Ok(&rules[n - 1])
}

/// Points per direction needed to integrate degree `d` exactly in one variable.
pub fn points_for_degree(d: usize) -> usize {
    d / 2 + 1
}

fn checked_points(d: usize) -> Result<usize> {
    let n = points_for_degree(d);
    if n > MAX_POINTS {
        Err(Error::QuadratureDegree {
            degree: d,
            max: 2 * MAX_POINTS - 1,
        })
    } else {
        Ok(n)
    }
}

/// Exact line integral of a degree-`degree` polynomial along segment `a → b`
/// with respect to arc length.
pub fn integrate_segment<Q: Quantity>(a: Vec3, b: Vec3, degree: usize, mut f: impl FnMut(Vec3) -> Q) -> Result<Q> {
    let rule = gauss_legendre(checked_points(degree)?)?;
    let len = (b - a).norm();
    let mut acc = Q::zero();
    for &(u, w) in rule {
        acc = acc + f(a + (b - a) * u) * (w * len);
    }
    Ok(acc)
}

/// Integral over triangle `(a, b, c)` with area element scaled by `sign`
/// (`±1`, used for signed fan decompositions of non-convex polygons).
pub fn integrate_triangle<Q: Quantity>(
    tri: [Vec3; 3],
    sign: f64,
    degree: usize,
    mut f: impl FnMut(Vec3) -> Q,
) -> Result<Q> {
    let [a, b, c] = tri;
    let n = checked_points(degree + 1)?;
    let rule = gauss_legendre(n)?;
    let area2 = (b - a).cross(c - b).norm();
    let mut acc = Q::zero();
    for &(u, wu) in rule {
        for &(v, wv) in rule {
            let x = a + (b - a) * u + (c - b) * (u * v);
            acc = acc + f(x) * (sign * wu * wv * u * area2);
        }
    }
    Ok(acc)
}

/// Signed integral over tetrahedron `(a, b, c, d)`; negative orientation
/// contributes with a negative sign.
pub fn integrate_tetrahedron<Q: Quantity>(tet: [Vec3; 4], degree: usize, mut f: impl FnMut(Vec3) -> Q) -> Result<Q> {
    let [a, b, c, d] = tet;
    let n = checked_points(degree + 2)?;
    let rule = gauss_legendre(n)?;
    let det = (b - a).dot((c - b).cross(d - c));
    let mut acc = Q::zero();
    for &(u, wu) in rule {
        for &(v, wv) in rule {
            for &(w, ww) in rule {
                let x = a + (b - a) * u + (c - b) * (u * v) + (d - c) * (u * v * w);
                acc = acc + f(x) * (wu * wv * ww * u * u * v * det);
            }
        }
    }
    Ok(acc)
}

/// Tensor-product rule on the unit square with `n` points per direction.
pub fn integrate_unit_square<Q: Quantity>(n: usize, mut f: impl FnMut(f64, f64) -> Q) -> Result<Q> {
    let rule = gauss_legendre(n)?;
    let mut acc = Q::zero();
    for &(s, ws) in rule {
        for &(t, wt) in rule {
            acc = acc + f(s, t) * (ws * wt);
        }
    }
    Ok(acc)
}

/// Tensor-product rule on the unit cube with `n` points per direction.
pub fn integrate_unit_cube<Q: Quantity>(n: usize, mut f: impl FnMut(f64, f64, f64) -> Q) -> Result<Q> {
    let rule = gauss_legendre(n)?;
    let mut acc = Q::zero();
    for &(s, ws) in rule {
        for &(t, wt) in rule {
            for &(r, wr) in rule {
                acc = acc + f(s, t, r) * (ws * wt * wr);
            }
        }
    }
    Ok(acc)
}

/// Rule on `[0, 1]` with `n` points.
pub fn integrate_unit_interval<Q: Quantity>(n: usize, mut f: impl FnMut(f64) -> Q) -> Result<Q> {
    let rule = gauss_legendre(n)?;
    let mut acc = Q::zero();
    for &(u, w) in rule {
        acc = acc + f(u) * w;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_exact_to_degree() {
        for n in 1..10 {
            let rule = gauss_legendre(n).unwrap();
            for d in 0..=(2 * n - 1) {
                let s: f64 = rule.iter().map(|(x, w)| w * x.powi(d as i32)).sum();
                assert!((s - 1.0 / (d as f64 + 1.0)).abs() < 1e-14, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn too_many_points_is_an_error() {
        assert!(gauss_legendre(MAX_POINTS + 1).is_err());
        assert!(integrate_segment(Vec3::ZERO, Vec3::basis(0), 500, |_| 1.0).is_err());
    }

    #[test]
    fn triangle_monomials() {
        // ∫_T x^2 y over the unit right triangle = 2!1!/5! = 1/60
        let tri = [Vec3::ZERO, Vec3::basis(0), Vec3::basis(1)];
        let v = integrate_triangle(tri, 1.0, 3, |x| x[0] * x[0] * x[1]).unwrap();
        assert!((v - 1.0 / 60.0).abs() < 1e-15);
    }

    #[test]
    fn tetrahedron_monomials_and_orientation() {
        // ∫ x y z over the unit tetrahedron = 1/720
        let tet = [Vec3::ZERO, Vec3::basis(0), Vec3::basis(1), Vec3::basis(2)];
        let v = integrate_tetrahedron(tet, 3, |x| x[0] * x[1] * x[2]).unwrap();
        assert!((v - 1.0 / 720.0).abs() < 1e-16);
        let flipped = [tet[0], tet[2], tet[1], tet[3]];
        let w = integrate_tetrahedron(flipped, 0, |_| 1.0).unwrap();
        assert!((w + 1.0 / 6.0).abs() < 1e-16);
    }
}

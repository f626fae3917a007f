//! Seeded generators for random fields, shapes and polyhedra.

use crate::contact::StressState;
use crate::geometry::{clip_cube, make_dihedral, AdmissibleDomain, DihedralShape};
use crate::tensor::{Component, Poly, PolyField, Tensor3, Vec3};
use rand::Rng;
use std::f64::consts::{PI, TAU};

/// Polynomial with every monomial of total degree `≤ degree` and coefficients
/// uniform in `[−1, 1]`.
pub fn random_poly<R: Rng>(rng: &mut R, degree: usize) -> Poly {
    let mut p = Poly::zero();
    for a in 0..=degree as u32 {
        for b in 0..=(degree as u32 - a) {
            for c in 0..=(degree as u32 - a - b) {
                p.add_term([a, b, c], rng.random_range(-1.0..=1.0));
            }
        }
    }
    p
}

pub fn random_field<C: Component, R: Rng>(rng: &mut R, degree: usize) -> PolyField<C> {
    PolyField::from_components((0..C::LEN).map(|_| random_poly(rng, degree)).collect())
}

pub fn random_state<R: Rng>(rng: &mut R, t_degree: usize, c_degree: usize) -> StressState {
    StressState::new(random_field(rng, t_degree), random_field(rng, c_degree))
}

pub fn random_tensor3<R: Rng>(rng: &mut R) -> Tensor3 {
    let v: Vec<f64> = (0..27).map(|_| rng.random_range(-1.0..=1.0)).collect();
    Tensor3::from_flat(&v)
}

pub fn random_vec<R: Rng>(rng: &mut R) -> Vec3 {
    Vec3::new(
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
    )
}

/// Uniformly distributed unit vector (rejection from the cube).
pub fn random_unit<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = random_vec(rng);
        let r = v.norm();
        if r > 0.1 && r <= 1.0 {
            return v * (1.0 / r);
        }
    }
}

/// Random non-degenerate dihedron with angle kept at least `margin` away from
/// 0, π and 2π.
pub fn random_dihedral<R: Rng>(rng: &mut R, margin: f64) -> DihedralShape {
    loop {
        let n1 = random_unit(rng);
        let w = random_unit(rng);
        let tau = w - n1 * n1.dot(w);
        if tau.norm() < 0.1 {
            continue;
        }
        let tau = tau * (1.0 / tau.norm());
        let theta = rng.random_range(margin..(TAU - margin));
        if (theta - PI).abs() < margin {
            continue;
        }
        let m = -n1;
        let n2 = m * theta.cos() + tau.cross(m) * theta.sin();
        let n2 = n2 * (1.0 / n2.norm());
        if let Ok(d) = make_dihedral(n1, n2, tau) {
            return d;
        }
    }
}

/// Cube `[−1, 1]³` clipped by three to six random planes.
pub fn random_convex_polyhedron<R: Rng>(rng: &mut R) -> AdmissibleDomain {
    loop {
        let k = rng.random_range(3..=6);
        let planes: Vec<(Vec3, f64)> = (0..k).map(|_| (random_unit(rng), rng.random_range(0.2..0.9))).collect();
        if let Ok(d) = clip_cube(&planes) {
            let small_edge = (0..d.edges.len()).any(|i| d.edge_length(i).map_or(true, |l| l < 1e-3));
            if !small_edge {
                return d.with_label("random_convex");
            }
        }
    }
}

//! Reconstruction of the hyperstress from coordinate probes: the double
//! tractions on the three coordinate planes and the edge forces on the three
//! coordinate edge shapes `f1 = (−e2, −e3, e1)`, `f2 = (−e3, −e1, e2)`,
//! `f3 = (−e1, −e2, e3)`.

use crate::contact::StressState;
use crate::error::Result;
use crate::geometry::{make_dihedral, DihedralShape};
use crate::tensor::{contract3_vv, Tensor2, Tensor3, Vec3};
use serde::Serialize;

/// Probe values at a point, in a fixed orthonormal basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoordinateProbes {
    pub x0: Vec3,
    /// `G(x0, e_i)`
    pub g_e: [Vec3; 3],
    /// `ℱ(x0, f_i)`
    pub f_f: [Vec3; 3],
    /// The basis `(e1, e2, e3)`; the standard basis unless probed in a rotated frame.
    pub basis: [Vec3; 3],
}

/// The edge shapes `f1`, `f2`, `f3` built on `basis`.
pub fn coordinate_edge_shapes(basis: &[Vec3; 3]) -> Result<[DihedralShape; 3]> {
    let [e1, e2, e3] = *basis;
    Ok([
        make_dihedral(-e2, -e3, e1)?,
        make_dihedral(-e3, -e1, e2)?,
        make_dihedral(-e1, -e2, e3)?,
    ])
}

fn standard_basis() -> [Vec3; 3] {
    [Vec3::basis(0), Vec3::basis(1), Vec3::basis(2)]
}

/// Probes of `s` at `x0` in the standard basis.
pub fn probe(s: &StressState, x0: Vec3) -> CoordinateProbes {
    probe_in_basis(s, x0, standard_basis()).expect("standard basis is orthonormal")
}

/// Probes of `s` at `x0` in a right-handed orthonormal basis.
pub fn probe_in_basis(s: &StressState, x0: Vec3, basis: [Vec3; 3]) -> Result<CoordinateProbes> {
    let f = coordinate_edge_shapes(&basis)?;
    let c = s.c_at(x0);
    Ok(CoordinateProbes {
        x0,
        g_e: std::array::from_fn(|i| contract3_vv(&c, basis[i], basis[i])),
        f_f: std::array::from_fn(|i| contract3_vv(&c, f[i].n1(), f[i].nu1()) + contract3_vv(&c, f[i].n2(), f[i].nu2())),
        basis,
    })
}

/// `G(x0, n) = ℱ(f1) n2 n3 + ℱ(f2) n3 n1 + ℱ(f3) n1 n2 + Σ G(e_i) n_i²` with
/// components taken in the probe basis.
pub fn g_from_probes(p: &CoordinateProbes, n: Vec3) -> Result<Vec3> {
    let n = n.require_unit()?;
    let c: [f64; 3] = std::array::from_fn(|i| n.dot(p.basis[i]));
    let mut g = p.f_f[0] * (c[1] * c[2]) + p.f_f[1] * (c[2] * c[0]) + p.f_f[2] * (c[0] * c[1]);
    for i in 0..3 {
        g += p.g_e[i] * (c[i] * c[i]);
    }
    Ok(g)
}

fn sym(a: Vec3, b: Vec3) -> Tensor2 {
    (a.outer(b) + b.outer(a)) * 0.5
}

/// Right-symmetric hyperstress reproducing the probes:
/// `Σ ½ℱ(f_i) ⊗ (e_j ⊗ e_k + e_k ⊗ e_j) + Σ G(e_i) ⊗ e_i ⊗ e_i`.
pub fn build_c_right(p: &CoordinateProbes) -> Tensor3 {
    let e = p.basis;
    let mut c = Tensor3::ZERO;
    for (i, (j, k)) in [(1, 2), (2, 0), (0, 1)].into_iter().enumerate() {
        c = c + Tensor3::vec_outer_t2(p.f_f[i], &sym(e[j], e[k]));
    }
    for i in 0..3 {
        c = c + Tensor3::outer(p.g_e[i], e[i], e[i]);
    }
    c
}

/// Left-symmetric hyperstress with the same double tractions and edge forces
/// as [`build_c_right`]. Each edge-force block `a ⊗ S` becomes
/// `a ⊗ S − S ⊗ a + (e_j ⊗ a ⊗ e_k + e_k ⊗ a ⊗ e_j)/2`, and each double-traction
/// block `g ⊗ e ⊗ e` becomes `g ⊗ e ⊗ e − e ⊗ e ⊗ g + e ⊗ g ⊗ e`.
pub fn build_c_left(p: &CoordinateProbes) -> Tensor3 {
    let e = p.basis;
    let mut c = Tensor3::ZERO;
    for (i, (j, k)) in [(1, 2), (2, 0), (0, 1)].into_iter().enumerate() {
        let a = p.f_f[i];
        let s = sym(e[j], e[k]);
        c = c + Tensor3::vec_outer_t2(a, &s) - Tensor3::t2_outer_vec(&s, a)
            + (Tensor3::outer(e[j], a, e[k]) + Tensor3::outer(e[k], a, e[j])) * 0.5;
    }
    for i in 0..3 {
        let g = p.g_e[i];
        c = c + Tensor3::outer(g, e[i], e[i]) - Tensor3::outer(e[i], e[i], g) + Tensor3::outer(e[i], g, e[i]);
    }
    c
}

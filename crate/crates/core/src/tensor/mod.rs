//! Fixed-dimension (3D) tensors of rank one to three, and polynomial fields
//! taking values in them.
//!
//! Index conventions used throughout the crate:
//!
//! ```text
//! (C·a)_ij      = C_ijk a_k
//! ((C·a)·b)_i   = C_ijk b_j a_k
//! (∇U)_ij       = ∂_j U_i
//! (∇U : C)_k    = ∂_j U_i C_ijk
//! (div M)_i     = ∂_j M_ij
//! ```
//!
//! With these, `∇U : (C·n) = (∇U : C)·n`, which is what the divergence
//! identity on flux `∇U : C` needs.

mod field;
mod poly;

pub use field::{div_t2, div_vec, grad, Component, PolyField};
pub use poly::{Exponents, Poly};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

/// Tolerance on `|n| = 1` for arguments that must be unit vectors.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    /// Basis vector `e_{i+1}` (zero-based index).
    pub fn basis(i: usize) -> Self {
        let mut v = [0.0; 3];
        v[i] = 1.0;
        Vec3(v)
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn normalized(self) -> Result<Vec3> {
        let n = self.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter(format!("cannot normalize vector {:?}", self.0)));
        }
        Ok(self * (1.0 / n))
    }

    pub fn is_unit(self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOL
    }

    /// Returns `self` if it is a unit vector, otherwise a precondition error.
    pub fn require_unit(self) -> Result<Vec3> {
        if self.is_unit() {
            Ok(self)
        } else {
            Err(Error::NonUnitVector { norm: self.norm() })
        }
    }

    pub fn outer(self, other: Vec3) -> Tensor2 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[i] * other.0[j];
            }
        }
        Tensor2(m)
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

/// Second-order tensor, row-major components `M_ij`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Tensor2(pub [[f64; 3]; 3]);

impl Tensor2 {
    pub const ZERO: Tensor2 = Tensor2([[0.0; 3]; 3]);

    pub fn identity() -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Tensor2(m)
    }

    /// `(M·v)_i = M_ij v_j`
    pub fn dot(&self, v: Vec3) -> Vec3 {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i][0] * v.0[0] + self.0[i][1] * v.0[1] + self.0[i][2] * v.0[2];
        }
        Vec3(out)
    }

    pub fn matmul(&self, other: &Tensor2) -> Tensor2 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Tensor2(m)
    }

    /// `A : B = A_ij B_ij`
    pub fn ddot(&self, other: &Tensor2) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.0[i][j] * other.0[i][j];
            }
        }
        s
    }

    pub fn transpose(&self) -> Tensor2 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[j][i];
            }
        }
        Tensor2(m)
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Largest `|M_ij − M_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.0[i][j] - self.0[j][i]).abs());
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn row(&self, i: usize) -> Vec3 {
        Vec3(self.0[i])
    }
}

impl Add for Tensor2 {
    type Output = Tensor2;
    fn add(self, o: Tensor2) -> Tensor2 {
        let mut m = self.0;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v += o.0[i][j];
            }
        }
        Tensor2(m)
    }
}

impl Sub for Tensor2 {
    type Output = Tensor2;
    fn sub(self, o: Tensor2) -> Tensor2 {
        self + o * -1.0
    }
}

impl Mul<f64> for Tensor2 {
    type Output = Tensor2;
    fn mul(self, s: f64) -> Tensor2 {
        let mut m = self.0;
        m.iter_mut().flatten().for_each(|v| *v *= s);
        Tensor2(m)
    }
}

/// Third-order tensor with components `C_ijk`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Tensor3(pub [[[f64; 3]; 3]; 3]);

impl Tensor3 {
    pub const ZERO: Tensor3 = Tensor3([[[0.0; 3]; 3]; 3]);

    /// `(a ⊗ b ⊗ c)_ijk = a_i b_j c_k`
    pub fn outer(a: Vec3, b: Vec3, c: Vec3) -> Tensor3 {
        let mut t = Tensor3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t.0[i][j][k] = a.0[i] * b.0[j] * c.0[k];
                }
            }
        }
        t
    }

    /// `a ⊗ M`, i.e. `a_i M_jk`.
    pub fn vec_outer_t2(a: Vec3, m: &Tensor2) -> Tensor3 {
        let mut t = Tensor3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t.0[i][j][k] = a.0[i] * m.0[j][k];
                }
            }
        }
        t
    }

    /// `M ⊗ a`, i.e. `M_ij a_k`.
    pub fn t2_outer_vec(m: &Tensor2, a: Vec3) -> Tensor3 {
        let mut t = Tensor3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t.0[i][j][k] = m.0[i][j] * a.0[k];
                }
            }
        }
        t
    }

    /// `"Spherical"` hyperstress `C_ijk = g_i δ_jk`.
    pub fn spherical(g: Vec3) -> Tensor3 {
        Tensor3::vec_outer_t2(g, &Tensor2::identity())
    }

    /// Right contraction `(C·a)_ij = C_ijk a_k`.
    pub fn dot(&self, a: Vec3) -> Tensor2 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][j][k] * a.0[k]).sum();
            }
        }
        Tensor2(m)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.0[i][j][k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.0[i][j][k] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().flatten().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest `|C_ijk − C_ikj|`.
    pub fn right_asymmetry(&self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    m = m.max((self.0[i][j][k] - self.0[i][k][j]).abs());
                }
            }
        }
        m
    }

    /// Largest `|C_ijk − C_jik|`.
    pub fn left_asymmetry(&self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    m = m.max((self.0[i][j][k] - self.0[j][i][k]).abs());
                }
            }
        }
        m
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;
    fn add(self, o: Tensor3) -> Tensor3 {
        let mut t = self;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t.0[i][j][k] += o.0[i][j][k];
                }
            }
        }
        t
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;
    fn sub(self, o: Tensor3) -> Tensor3 {
        self + o * -1.0
    }
}

impl Mul<f64> for Tensor3 {
    type Output = Tensor3;
    fn mul(self, s: f64) -> Tensor3 {
        let mut t = self;
        t.0.iter_mut().flatten().flatten().for_each(|v| *v *= s);
        t
    }
}

/// `((C·a)·b)_i = C_ijk b_j a_k`
pub fn contract3_vv(c: &Tensor3, a: Vec3, b: Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let mut s = 0.0;
        for j in 0..3 {
            for k in 0..3 {
                s += c.0[i][j][k] * b.0[j] * a.0[k];
            }
        }
        *o = s;
    }
    Vec3(out)
}

/// `(M : C)_k = M_ij C_ijk`
pub fn contract3_t2(c: &Tensor3, m: &Tensor2) -> Vec3 {
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += m.0[i][j] * c.0[i][j][k];
            }
        }
        *o = s;
    }
    Vec3(out)
}

/// Symmetric part in the last two slots, `(C_ijk + C_ikj) / 2`.
pub fn right_symmetrize(c: &Tensor3) -> Tensor3 {
    let mut t = Tensor3::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                t.0[i][j][k] = 0.5 * (c.0[i][j][k] + c.0[i][k][j]);
            }
        }
    }
    t
}

/// Tangent-plane projector `Π = Id − n ⊗ n`.
pub fn projector(n: Vec3) -> Result<Tensor2> {
    let n = n.require_unit()?;
    Ok(Tensor2::identity() - n.outer(n))
}

/// Orthonormal right-handed frame `(e1, e2, e3)` with `e3 = n`.
pub fn frame_from_normal(n: Vec3) -> Result<[Vec3; 3]> {
    let n = n.require_unit()?;
    // pick the axis least aligned with n
    let mut k = 0;
    for i in 1..3 {
        if n.0[i].abs() < n.0[k].abs() {
            k = i;
        }
    }
    let e1 = (Vec3::basis(k) - n * n.0[k]).normalized()?;
    let e2 = n.cross(e1);
    Ok([e1, e2, n])
}

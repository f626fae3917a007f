use crate::error::{Error, Result};
use crate::tensor::{Tensor2, Vec3};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Orthogonality tolerance between the edge tangent and the face normals.
pub const ORTHO_TOL: f64 = 1e-10;
/// Angles closer than this to 0, π or 2π are rejected.
pub const ANGLE_TOL: f64 = 1e-10;

/// Shape of a plane: its outward unit normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneShape {
    n: Vec3,
}

impl PlaneShape {
    pub fn new(n: Vec3) -> Result<Self> {
        Ok(PlaneShape { n: n.require_unit()? })
    }

    pub fn normal(&self) -> Vec3 {
        self.n
    }

    pub fn matches(&self, other: &PlaneShape, tol: f64) -> bool {
        (self.n - other.n).max_abs() <= tol
    }
}

/// Shape of a non-degenerate dihedron `(n1, n2, τ)`, with the in-face outward
/// edge normals `ν1 = τ × n1` and `ν2 = −τ × n2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DihedralShape {
    n1: Vec3,
    n2: Vec3,
    tau: Vec3,
    nu1: Vec3,
    nu2: Vec3,
}

/// Builds a dihedral shape, rejecting flat (`n1 = n2`) and folded (`n1 = −n2`)
/// dihedra.
pub fn make_dihedral(n1: Vec3, n2: Vec3, tau: Vec3) -> Result<DihedralShape> {
    let n1 = n1.require_unit()?;
    let n2 = n2.require_unit()?;
    let tau = tau.require_unit()?;
    let violation = tau.dot(n1).abs().max(tau.dot(n2).abs());
    if violation > ORTHO_TOL {
        return Err(Error::NotOrthogonal { violation });
    }
    let d = DihedralShape {
        n1,
        n2,
        tau,
        nu1: tau.cross(n1),
        nu2: -tau.cross(n2),
    };
    d.angle()?;
    Ok(d)
}

impl DihedralShape {
    pub fn n1(&self) -> Vec3 {
        self.n1
    }
    pub fn n2(&self) -> Vec3 {
        self.n2
    }
    pub fn tau(&self) -> Vec3 {
        self.tau
    }
    pub fn nu1(&self) -> Vec3 {
        self.nu1
    }
    pub fn nu2(&self) -> Vec3 {
        self.nu2
    }

    /// The same shape written as `(n2, n1, −τ)`.
    pub fn swapped(&self) -> DihedralShape {
        DihedralShape {
            n1: self.n2,
            n2: self.n1,
            tau: -self.tau,
            nu1: self.nu2,
            nu2: self.nu1,
        }
    }

    /// Angle from `−n1` to `n2` in the plane orthogonal to `τ`, oriented by `τ`,
    /// in `(0, 2π)`.
    pub fn angle(&self) -> Result<f64> {
        let a = -self.n1;
        let mut theta = a.cross(self.n2).dot(self.tau).atan2(a.dot(self.n2));
        if theta < 0.0 {
            theta += TAU;
        }
        let near = [0.0, PI, TAU].iter().any(|&bad| (theta - bad).abs() <= ANGLE_TOL);
        if near || (self.n1 - self.n2).max_abs() <= ANGLE_TOL || (self.n1 + self.n2).max_abs() <= ANGLE_TOL {
            return Err(Error::DegenerateDihedral(format!(
                "dihedral angle {theta} is 0, π or 2π"
            )));
        }
        Ok(theta)
    }

    /// `n1 ⊗ ν1 + n2 ⊗ ν2`, which is symmetric for every dihedron.
    pub fn n_nu_sum(&self) -> Tensor2 {
        self.n1.outer(self.nu1) + self.n2.outer(self.nu2)
    }

    /// Equality of shapes, honouring `(n1, n2, τ) = (n2, n1, −τ)`.
    pub fn matches(&self, other: &DihedralShape, tol: f64) -> bool {
        let same = |a: &DihedralShape, b: &DihedralShape| {
            (a.n1 - b.n1).max_abs() <= tol && (a.n2 - b.n2).max_abs() <= tol && (a.tau - b.tau).max_abs() <= tol
        };
        same(self, other) || same(&self.swapped(), other)
    }
}

impl Serialize for DihedralShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DihedralSpec {
            n1: self.n1,
            n2: self.n2,
            tau: self.tau,
        }
        .serialize(s)
    }
}

/// Unvalidated `(n1, n2, τ)` triple, as it appears in configuration files.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DihedralSpec {
    pub n1: Vec3,
    pub n2: Vec3,
    pub tau: Vec3,
}

impl DihedralSpec {
    pub fn build(&self) -> Result<DihedralShape> {
        make_dihedral(self.n1, self.n2, self.tau)
    }
}

impl From<&DihedralShape> for DihedralSpec {
    fn from(d: &DihedralShape) -> Self {
        DihedralSpec {
            n1: d.n1,
            n2: d.n2,
            tau: d.tau,
        }
    }
}

//! Contact densities derived from an ordinary stress `T` and a hyperstress
//! `C`: the double traction `G = (C·n)·n`, the edge force
//! `ℱ = (C·n1)·ν1 + (C·n2)·ν2` and the surface force
//! `F = T·n − ∇ˢ·((C·n)Π)`, together with the power they expend.

mod power;
mod raw;

pub use power::{
    bulk_density, bulk_power, contact_force, contact_power, power, quasi_balance_constant, raw_power, ContactDensities,
    PowerBreakdown,
};
pub use raw::{reduced_edge_force, reduced_surface_force, RawContactAnsatz};

use crate::error::{Error, Result};
use crate::geometry::{DihedralShape, Face, FaceKind, SurfacePoint};
use crate::tensor::{contract3_t2, contract3_vv, grad, projector, PolyField, Tensor2, Tensor3, Vec3};

/// Tolerance on `|W·n|` for fields that must be tangential.
pub const TANGENTIAL_TOL: f64 = 1e-10;

/// Ordinary stress and hyperstress fields.
#[derive(Clone, Debug, PartialEq)]
pub struct StressState {
    t: PolyField<Tensor2>,
    c: PolyField<Tensor3>,
    dc: [PolyField<Tensor3>; 3],
}

impl StressState {
    pub fn new(t: PolyField<Tensor2>, c: PolyField<Tensor3>) -> Self {
        let dc = std::array::from_fn(|m| c.partial(m));
        StressState { t, c, dc }
    }

    pub fn constant(t: Tensor2, c: Tensor3) -> Self {
        StressState::new(PolyField::constant(t), PolyField::constant(c))
    }

    pub fn stress(&self) -> &PolyField<Tensor2> {
        &self.t
    }

    pub fn hyperstress(&self) -> &PolyField<Tensor3> {
        &self.c
    }

    /// Same `T`, different hyperstress.
    pub fn with_hyperstress(&self, c: PolyField<Tensor3>) -> Self {
        StressState::new(self.t.clone(), c)
    }

    /// Same hyperstress, different `T`.
    pub fn with_stress(&self, t: PolyField<Tensor2>) -> Self {
        StressState {
            t,
            c: self.c.clone(),
            dc: self.dc.clone(),
        }
    }

    pub fn t_at(&self, x: Vec3) -> Tensor2 {
        self.t.eval(x)
    }

    pub fn c_at(&self, x: Vec3) -> Tensor3 {
        self.c.eval(x)
    }

    /// `∂_m C` at `x`.
    pub fn dc_at(&self, x: Vec3, m: usize) -> Tensor3 {
        self.dc[m].eval(x)
    }

    pub fn degree(&self) -> usize {
        self.t.degree().max(self.c.degree())
    }

    /// `G(x, n) = (C(x)·n)·n`.
    pub fn normal_traction(&self, x: Vec3, n: Vec3) -> Result<Vec3> {
        let n = n.require_unit()?;
        Ok(contract3_vv(&self.c_at(x), n, n))
    }

    /// `ℱ(x, d) = (C(x)·n1)·ν1 + (C(x)·n2)·ν2`.
    pub fn edge_force(&self, x: Vec3, d: &DihedralShape) -> Vec3 {
        let c = self.c_at(x);
        contract3_vv(&c, d.n1(), d.nu1()) + contract3_vv(&c, d.n2(), d.nu2())
    }

    /// `∇ˢ·((C·n)Π)` at a point of `face`. On planar faces `n` is constant and
    /// the term reduces to `Π_lm n_k ∂_m C_ilk`; on curved faces the
    /// parametric pullback accounts for the variation of `n` and `Π`.
    pub fn hyperstress_divergence(&self, face: &Face, p: &SurfacePoint) -> Result<Vec3> {
        match &face.kind {
            FaceKind::Planar(poly) => {
                let n = poly.normal();
                let pi = projector(n)?;
                let mut out = Vec3::ZERO;
                for m in 0..3 {
                    let dcn = self.dc_at(p.x, m).dot(n);
                    for i in 0..3 {
                        out[i] += (0..3).map(|l| pi.0[l][m] * dcn.0[i][l]).sum::<f64>();
                    }
                }
                Ok(out)
            }
            FaceKind::Patch(patch) => {
                let [s, t] = p
                    .params
                    .ok_or_else(|| Error::InvalidGeometry("curved face point without parameters".into()))?;
                let pp = patch.point(s, t);
                let n = pp.normal;
                let big = pp.big_n.norm();
                let sigma = patch.sigma();
                let d_big = [
                    (pp.r_ss.cross(pp.r_t) + pp.r_s.cross(pp.r_st)) * sigma,
                    (pp.r_st.cross(pp.r_t) + pp.r_s.cross(pp.r_tt)) * sigma,
                ];
                let dn = d_big.map(|d| (d - n * n.dot(d)) * (1.0 / big));
                let r = [pp.r_s, pp.r_t];
                let g = [[r[0].dot(r[0]), r[0].dot(r[1])], [r[1].dot(r[0]), r[1].dot(r[1])]];
                let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
                let ginv = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]];
                let c = self.c_at(pp.x);
                let dc: [Tensor3; 3] = std::array::from_fn(|m| self.dc_at(pp.x, m));
                let cn = c.dot(n);
                let pi = Tensor2::identity() - n.outer(n);
                let mut out = Vec3::ZERO;
                for a in 0..2 {
                    let dca = dc[0] * r[a][0] + dc[1] * r[a][1] + dc[2] * r[a][2];
                    let da_cn = dca.dot(n) + c.dot(dn[a]);
                    let da_pi = (dn[a].outer(n) + n.outer(dn[a])) * -1.0;
                    let dw = da_cn.matmul(&pi) + cn.matmul(&da_pi);
                    for b in 0..2 {
                        out += dw.dot(r[b]) * ginv[a][b];
                    }
                }
                Ok(out)
            }
        }
    }

    /// `F = T·n − ∇ˢ·((C·n)Π)`.
    pub fn surface_force(&self, face: &Face, p: &SurfacePoint) -> Result<Vec3> {
        Ok(self.t_at(p.x).dot(p.normal) - self.hyperstress_divergence(face, p)?)
    }
}

/// `G(x, n) = (C(x)·n)·n`.
pub fn normal_traction(s: &StressState, x: Vec3, n: Vec3) -> Result<Vec3> {
    s.normal_traction(x, n)
}

/// `ℱ(x, d) = (C(x)·n1)·ν1 + (C(x)·n2)·ν2`.
pub fn edge_force(s: &StressState, x: Vec3, d: &DihedralShape) -> Vec3 {
    s.edge_force(x, d)
}

/// `F(x) = T(x)·n − ∇ˢ·((C·n)Π)(x)` on a face.
pub fn surface_force(s: &StressState, face: &Face, p: &SurfacePoint) -> Result<Vec3> {
    s.surface_force(face, p)
}

/// `(∇ˢ·W)_i = Π_jk ∂_k W_ij` at a point of `face` for a polynomial field
/// `W` tangential in its second slot.
pub fn surface_divergence(face: &Face, w: &PolyField<Tensor2>, p: &SurfacePoint) -> Result<Vec3> {
    let n = face.normal_at(p.params)?;
    let wx = w.eval(p.x);
    let violation = wx.dot(n).max_abs();
    if violation > TANGENTIAL_TOL * wx.max_abs().max(1.0) {
        return Err(Error::NonTangentialField { violation });
    }
    let pi = projector(n)?;
    let dw: [Tensor2; 3] = std::array::from_fn(|k| w.partial(k).eval(p.x));
    let mut out = Vec3::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            for (k, dwk) in dw.iter().enumerate() {
                out[i] += pi.0[j][k] * dwk.0[i][j];
            }
        }
    }
    Ok(out)
}

/// `q = ∇U : C` as a polynomial field.
pub fn interstitial_flux_field(s: &StressState, u: &PolyField<Vec3>) -> PolyField<Vec3> {
    let gu = grad(u);
    let c = s.hyperstress();
    PolyField::from_array(std::array::from_fn(|k| {
        let mut q = crate::tensor::Poly::zero();
        for i in 0..3 {
            for j in 0..3 {
                q = &q + &(gu.entry(i, j) * c.entry(i, j, k));
            }
        }
        q
    }))
}

/// Interstitial working flux `q = ∇U : C`.
pub fn interstitial_flux(s: &StressState, u: &PolyField<Vec3>, x: Vec3) -> Vec3 {
    contract3_t2(&s.c_at(x), &grad(u).eval(x))
}

/// `∇U : (C·n) = ∂U/∂n · G + ∇ˢU : ((C·n)Π)`, returned as the two summands.
pub fn normal_tangential_split(s: &StressState, u: &PolyField<Vec3>, x: Vec3, n: Vec3) -> Result<(f64, f64)> {
    let pi = projector(n)?;
    let gu = grad(u).eval(x);
    let c = s.c_at(x);
    let normal = gu.dot(n).dot(contract3_vv(&c, n, n));
    let tangential = gu.matmul(&pi).ddot(&c.dot(n).matmul(&pi));
    Ok((normal, tangential))
}

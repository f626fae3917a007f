use super::{ContactDensities, StressState};
use crate::error::Result;
use crate::geometry::{AdmissibleDomain, DihedralShape, EdgePoint, PlaneShape, SurfacePoint};
use crate::tensor::{PolyField, Vec3};

/// Tolerance used to look up the shape of a boundary point in an ansatz.
pub const ANSATZ_MATCH_TOL: f64 = 1e-9;

/// Contact densities given shape by shape, with no relation to any stress
/// state. Shapes not listed carry zero density.
#[derive(Clone, Debug, Default)]
pub struct RawContactAnsatz {
    pub surface: Vec<(PlaneShape, PolyField<Vec3>)>,
    pub edges: Vec<(DihedralShape, PolyField<Vec3>)>,
    /// Double traction per plane shape; absent by default.
    pub normal: Option<Vec<(PlaneShape, PolyField<Vec3>)>>,
}

impl RawContactAnsatz {
    pub fn new() -> Self {
        RawContactAnsatz::default()
    }

    pub fn with_surface(mut self, n: PlaneShape, f: PolyField<Vec3>) -> Self {
        self.surface.push((n, f));
        self
    }

    pub fn with_edge(mut self, d: DihedralShape, f: PolyField<Vec3>) -> Self {
        self.edges.push((d, f));
        self
    }

    pub fn with_normal(mut self, n: PlaneShape, g: PolyField<Vec3>) -> Self {
        self.normal.get_or_insert_with(Vec::new).push((n, g));
        self
    }

    fn plane_lookup(list: &[(PlaneShape, PolyField<Vec3>)], p: &SurfacePoint) -> Vec3 {
        list.iter()
            .find(|(s, _)| (s.normal() - p.normal).max_abs() <= ANSATZ_MATCH_TOL)
            .map_or(Vec3::ZERO, |(_, f)| f.eval(p.x))
    }
}

impl ContactDensities for RawContactAnsatz {
    fn surface_force(&self, _dom: &AdmissibleDomain, p: &SurfacePoint) -> Result<Vec3> {
        Ok(RawContactAnsatz::plane_lookup(&self.surface, p))
    }

    fn edge_force(&self, p: &EdgePoint) -> Result<Vec3> {
        Ok(self
            .edges
            .iter()
            .find(|(d, _)| p.dihedral.matches(d, ANSATZ_MATCH_TOL))
            .map_or(Vec3::ZERO, |(_, f)| f.eval(p.x)))
    }

    fn normal_traction(&self, _dom: &AdmissibleDomain, p: &SurfacePoint) -> Result<Option<Vec3>> {
        Ok(self.normal.as_ref().map(|list| RawContactAnsatz::plane_lookup(list, p)))
    }

    fn degree(&self) -> usize {
        let planes = self.surface.iter().chain(self.normal.iter().flatten());
        planes
            .map(|(_, f)| f.degree())
            .chain(self.edges.iter().map(|(_, f)| f.degree()))
            .max()
            .unwrap_or(0)
    }
}

/// `ℱ′ = ℱ − (C·n1)·ν1 − (C·n2)·ν2`.
pub fn reduced_edge_force<D: ContactDensities + ?Sized>(s: &StressState, raw: &D, p: &EdgePoint) -> Result<Vec3> {
    Ok(raw.edge_force(p)? - s.edge_force(p.x, &p.dihedral))
}

/// `F′ = F + ∇ˢ·((C·n)Π)`.
pub fn reduced_surface_force<D: ContactDensities + ?Sized>(
    s: &StressState,
    raw: &D,
    dom: &AdmissibleDomain,
    p: &SurfacePoint,
) -> Result<Vec3> {
    Ok(raw.surface_force(dom, p)? + s.hyperstress_divergence(&dom.faces[p.face], p)?)
}

//! Admissible domains: faces, edges and volume cells, dihedral shapes, and
//! exact quadrature over each of them.

mod builders;
mod dihedral;
mod domain;
mod edge;
mod face;
pub mod quadrature;

pub use builders::{
    build_box, build_cauchy_tetrahedron, build_graph_patch_box, build_grooved_slab, build_prism, build_wedge,
    clip_cube, dihedral_frame, SHAPE_MATCH_TOL,
};
pub use dihedral::{make_dihedral, DihedralShape, DihedralSpec, PlaneShape, ANGLE_TOL, ORTHO_TOL};
pub use domain::{AdmissibleDomain, MappedCell, VolumeCell, DEFAULT_CURVED_ORDER};
pub use edge::{Edge, EdgeCurve, EdgePoint, EdgeSide};
pub use face::{Face, FaceKind, ParamMap, ParametricPatch, PatchPoint, PlanarPolygon, SurfacePoint};

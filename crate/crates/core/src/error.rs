use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vector is not unit length (norm {norm})")]
    NonUnitVector { norm: f64 },

    #[error("flat or folded shape: {0}")]
    DegenerateDihedral(String),

    #[error("edge tangent is not orthogonal to the face normals (violation {violation:e})")]
    NotOrthogonal { violation: f64 },

    #[error("polynomial degree {degree} exceeds the largest available quadrature rule (max {max})")]
    QuadratureDegree { degree: usize, max: usize },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("field is not tangential to the face (violation {violation:e})")]
    NonTangentialField { violation: f64 },

    #[error("containment conditions violated: {0}")]
    Containment(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

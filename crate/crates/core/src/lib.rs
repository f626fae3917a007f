// `!(x > 0.0)` is used on purpose so that NaN is rejected too; index loops
// follow the tensor notation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

//! Contact forces for second-gradient continua: hyperstress fields, derived
//! surface, edge and double-traction densities, exact quadrature over
//! polyhedral and curved domains, and numerical checks of the limit
//! constructions that characterise them.

pub mod cli;
pub mod contact;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod reconstruction;
pub mod tensor;

pub use error::{Error, Result};

//! Exact linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;

pub use matrix::{Matrix, RowEchelon, SparseVec};
pub use scalar::{FieldSpec, Scalar};

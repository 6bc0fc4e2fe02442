//! Exact computations for the Hochschild cohomology of the quantum complete
//! intersections `Λ_s` on a circular quiver with `s` vertices.
//!
//! The crate builds the minimal projective bimodule resolution explicitly,
//! derives the cochain complex from it, and computes cohomology dimensions and
//! Yoneda products over `ℚ` or `𝔽_p` with exact arithmetic.

pub mod algebra;
pub mod cochains;
pub mod error;
pub mod linalg;
pub mod resolution;
pub mod yoneda;

pub use algebra::{Algebra, AlgebraElement, BasisElement, Word};
pub use error::{Error, Result};
pub use linalg::{FieldSpec, Matrix, Scalar};

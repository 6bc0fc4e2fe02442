use thiserror::Error;

use crate::resolution::GeneratorIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),

    #[error("the quiver needs at least one vertex")]
    NoVertices,

    #[error("operands belong to different algebras (s={left_s}, {left_field} vs s={right_s}, {right_field})")]
    MixedAlgebras {
        left_s: usize,
        left_field: String,
        right_s: usize,
        right_field: String,
    },

    #[error("term at generator {generator} is not vertex-compatible")]
    IncompatibleTerm { generator: GeneratorIndex },

    #[error("closed-form dimension formulas need s >= 3, got s = {0}")]
    FormulaOutOfRange(usize),

    #[error("cochain of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },

    #[error("image of the differential into degree {degree} is not contained in the kernel")]
    ImageNotInKernel { degree: usize },

    #[error("lifting failed at step {step} for generator {generator}")]
    LiftFailed { step: usize, generator: GeneratorIndex },

    #[error("cochain degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

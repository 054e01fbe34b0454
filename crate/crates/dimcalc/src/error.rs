//! Crate-wide error type.
//!
//! Every fallible operation in the engine returns [`Error`]; the CLI maps
//! errors to exit status 1 and findings (empty model list, inhomogeneous
//! equation) to exit status 2.

use thiserror::Error;

use crate::quantity::ScalarMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different quantity spaces")]
    SpaceMismatch,

    #[error("measure {measure} is not admissible in {mode} mode")]
    InadmissibleMeasure { measure: String, mode: ScalarMode },

    #[error("quantity with zero measure is not invertible")]
    NotInvertible,

    #[error("operands are not equidimensional")]
    NotEquidimensional,

    #[error("{mode} mode admits no additive inverses")]
    ModeForbidsNegation { mode: ScalarMode },

    #[error("exponent vector is not divisible by {k}")]
    ExponentsNotDivisible { k: u32 },

    #[error("measure {measure} has no exact rational {k}th root")]
    MeasureNotPerfectPower { measure: String, k: u32 },

    #[error("{k}th root requires a positive measure")]
    NonPositiveMeasure { k: u32 },

    #[error("quantities do not form a basis (exponent matrix is not unimodular)")]
    NotABasis,

    #[error("columns are not independent")]
    DependentColumns,

    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },

    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("duplicate name `{name}`")]
    DuplicateName { name: String },

    #[error("unknown name `{name}`")]
    UnknownName { name: String },

    #[error("invalid model: {reason}")]
    ModelInvalid { reason: String },

    #[error("unit `{name}` is already defined")]
    DuplicateUnit { name: String },

    #[error("unknown unit `{name}`")]
    UnknownUnit { name: String },

    #[error("unknown variable `{name}`")]
    UnknownVariable { name: String },

    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },

    #[error("semantic error: {msg}")]
    SemanticError { msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared by all library operations.

use thiserror::Error;

/// Errors reported by parsing, arithmetic and the higher-level pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("map has {components} components in {arity} variables; a square map is required")]
    NotSquareMap { components: usize, arity: usize },
    #[error("negative exponent")]
    NegativeExponent,
    #[error("all inputs are zero")]
    AllZero,
    #[error("the map is not a quasi-translation: {0}")]
    NotQuasiTranslation(String),
    #[error("the given maps are not mutually inverse")]
    NotInverse,
    #[error("component {index} has quasi-degree {nu} > 1, so conjugation does not apply")]
    QuasiDegreeTooHigh { index: usize, nu: u32 },
    #[error("degree {given} is smaller than the map degree {required}")]
    DegreeTooSmall { given: u32, required: u32 },
    #[error("map is not homogeneous of positive degree")]
    NotHomogeneous,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("relation does not annihilate its target map")]
    NotARelation,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Checks a condition that established theory guarantees; a failure signals a
/// bug rather than bad input, so it surfaces as `Error::Internal`.
pub(crate) fn internal_check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(msg.to_string()))
    }
}

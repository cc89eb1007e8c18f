use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Every variant names the precondition that was violated so callers can
/// surface it as a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("colour count mismatch: {left} vs {right}")]
    ColourCountMismatch { left: usize, right: usize },

    #[error("root-of-unity order must be at least 2, got {0}")]
    InvalidOrder(u32),

    #[error("non-invertible specialization: negative power of colour {colour} whose value is 0")]
    NonInvertibleSpecialization { colour: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("scalars live in different number fields")]
    FieldMismatch,

    #[error("inexact division")]
    InexactDivision,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid set partition: {0}")]
    InvalidPartition(String),

    #[error("block of size {0} in a pair partition")]
    NotPairPartition(usize),

    #[error("invalid link state: {0}")]
    InvalidLinkState(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("colour {colour} is generic; specialize parameters first")]
    GenericParameter { colour: usize },

    #[error("colour {colour}: delta = {value} corresponds to q = +-1 (order 1), which is unsupported")]
    UnsupportedOrderOne { colour: usize, value: String },

    #[error("arc-preservation requires invertible delta, but colour {colour} has delta = 0")]
    ZeroParameter { colour: usize },

    #[error("symbolic determinant of dimension {dim} exceeds the limit {limit}; specialize parameters or use the factorized formula")]
    SymbolicTooLarge { dim: usize, limit: usize },

    #[error("operation requires m = 2 colours, got {0}")]
    NotTwoColours(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

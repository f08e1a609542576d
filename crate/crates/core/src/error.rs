use thiserror::Error;

/// Errors raised by the library. Invalid structures found during validation are
/// reported through [`crate::algebra::ValidationReport`] instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero in field")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("coboundaries not contained in cocycles")]
    NotContained,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown catalog entry '{name}' (available: {available})")]
    UnknownCatalog { name: String, available: String },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("not a 2-cocycle: violates the {0} equation")]
    NotACocycle(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("Phi not well-defined: {0}")]
    PhiNotWellDefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;

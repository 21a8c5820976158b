use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("not a quasi-category: unfilled horn {0}")]
    NotQuasiCategory(String),

    #[error("table error: {0}")]
    Table(String),

    /// Raised by self-verifying constructions when an internal check that
    /// must always hold fails. Firing indicates a bug, never bad input.
    #[error("construction bug: {0}")]
    ConstructionBug(String),
}

pub type Result<T> = std::result::Result<T, Error>;

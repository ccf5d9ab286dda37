use thiserror::Error;

use crate::base_group::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition {
        parts: Vec<usize>,
        reason: &'static str,
    },

    #[error("expected {expected} components, found {found}")]
    ComponentMismatch { expected: usize, found: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("index {index} out of range (count is {count})")]
    IndexOutOfRange { index: String, count: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unknown built-in group {0:?}")]
    UnknownGroup(String),

    #[error("malformed group document: {0}")]
    MalformedGroup(String),

    #[error("group data failed validation: {0}")]
    InvalidGroup(ValidationReport),

    #[error("request needs {cells} cells, over the budget of {budget}")]
    BudgetExceeded { cells: String, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed cache file {path}: {reason}")]
    BadCache { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

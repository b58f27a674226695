use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{what} of size {} exceeds the cap of {cap}", size_label(*.size))]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("design set is empty")]
    EmptyDesign,

    #[error("coordinates sum to {sum}, not 1")]
    NotOnHyperplane { sum: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no real solution: {0}")]
    NoRealSolution(String),

    #[error("root finders disagree: {0}")]
    RootMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

fn size_label(size: u128) -> String {
    if size == u128::MAX {
        "at least 2^128 - 1".to_string()
    } else {
        size.to_string()
    }
}

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order mismatch: mask built for order {mask} used with group of order {group}")]
    OrderMismatch { mask: usize, group: usize },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty set: {0}")]
    EmptySet(&'static str),
    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("not a complement: {0}")]
    NotComplement(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal in its group")]
    NotNormal,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

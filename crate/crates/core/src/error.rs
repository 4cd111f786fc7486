use thiserror::Error;

/// Errors raised by group construction, lattice queries and Burnside ring operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup of order {inner} is not contained in subgroup of order {outer}")]
    NotContained { inner: usize, outer: usize },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("unknown class label {0:?}")]
    UnknownLabel(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

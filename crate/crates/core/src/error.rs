use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropError {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    /// An invariant that the construction guarantees was violated.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, TropError>;

impl TropError {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        TropError::Shape(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        TropError::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        TropError::Resource(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        TropError::Internal(msg.into())
    }
}

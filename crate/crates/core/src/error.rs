use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied arguments that make no sense together (wrong field,
    /// unsupported order, malformed token).
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition failed (division by zero, dependent basis,
    /// determinant outside the required set).
    #[error("domain error: {0}")]
    Domain(String),
    /// A set that was supposed to be a subgroup, partition or square is not.
    #[error("construction error: {0}")]
    Construction(String),
    /// An exactness certificate failed. Seeing one of these means a bug or a
    /// non-extraordinary input slipped past validation.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

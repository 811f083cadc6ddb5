use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The requested quantity is not defined for the given inputs.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to converge or lost accuracy.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// An operation was called before its prerequisites were satisfied.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A scenario file or parameter set failed validation.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

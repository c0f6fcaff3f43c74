use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Error, Debug)]
pub enum Error {
    /// Shape or index mismatch between operands.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Invalid argument or instance data.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An iterative kernel failed to converge within its sweep cap.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A construction exceeds its configured size limit.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// Exhaustive enumeration would exceed the configured cap.
    #[error("enumeration cap exceeded: {needed} subset pairs > cap {cap}")]
    EnumerationCap { needed: u128, cap: u128 },

    /// A matrix or report file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

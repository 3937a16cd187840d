use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not a chain complex: boundary composite d{degree} . d{} is nonzero", degree + 1)]
    NotAComplex { degree: usize },

    #[error("not a chain map in degree {degree}: {detail}")]
    NotAChainMap { degree: usize, detail: String },

    #[error("not a short exact sequence: {0}")]
    NotExact(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("basis of size {size} exceeds the configured ceiling of {limit} ({context})")]
    BasisTooLarge {
        size: usize,
        limit: usize,
        context: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

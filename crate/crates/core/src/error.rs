use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse distribution: unexpected token `{token}`")]
    Parse { token: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation undefined for the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gcd({m}, {n}) != 1")]
    NotCoprime { m: u64, n: u64 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("index {k} out of range 0..={ell}")]
    IndexError { ell: u32, k: u32 },
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::DomainError(msg.into())
}

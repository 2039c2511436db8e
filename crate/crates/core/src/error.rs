use thiserror::Error;

/// Errors raised by the field, matrix and character machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("level {0} is not present in the tower")]
    MissingLevel(u32),
    #[error("level {from} does not divide level {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("elements live at different levels ({0} vs {1})")]
    LevelMismatch(u32, u32),
    #[error("zero has no discrete logarithm or character value")]
    ZeroElement,
    #[error("code {code} is not an element of a field with {size} elements")]
    BadCode { code: u64, size: u64 },
    #[error("polynomial is reducible")]
    Reducible,
    #[error("polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions do not match: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("element is not an eigenvalue of the matrix")]
    NotEigenvalue,
    #[error("element is not in {0}")]
    NotInGroup(&'static str),
    #[error("character index {0} is not regular")]
    NotRegular(u64),
    #[error("twist matrix must have rank 1 for this operation (rank {0})")]
    RankNotOne(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

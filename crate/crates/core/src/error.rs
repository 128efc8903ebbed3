use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomial modulus is not monic")]
    NonMonic,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("operands live over different rings")]
    MismatchedRings,
    #[error("submodule is not closed under the ring action")]
    NotActionClosed,
    #[error("cardinality bound exceeded: {size} > {bound}")]
    BoundExceeded { bound: u128, size: u128 },
    #[error("ideal is not idempotent")]
    NotIdempotent,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree {requested} not computed (resolution length {length})")]
    NotComputed { requested: usize, length: usize },
    #[error("truncation degree {degree} too small: {detail}")]
    Truncation { degree: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

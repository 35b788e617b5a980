use alloc::string::String;

/// Errors raised by constructors and operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("period matrix is not symmetric")]
    NotSymmetric,
    #[error("imaginary part of the period matrix is not positive definite")]
    NotPositive,
    #[error("period lattice is not discrete")]
    NotDiscrete,
    #[error("rank deficient input: {0}")]
    RankDeficient(String),
    #[error("type violation: {0}")]
    TypeViolation(String),
    #[error("missing polarization on the weight -1 graded piece")]
    MissingPolarization,
    #[error("relations fail for the polarization: {0}")]
    Riemann(String),
    #[error("level must be at least 2, got {0}")]
    Level(u64),
    #[error("levels must form a divisibility chain: {0} does not divide {1}")]
    LevelChain(u64, u64),
    #[error("weight index {0} out of range")]
    Weight(i64),
    #[error("invalid curve configuration: {0}")]
    Curve(String),
    #[error("invalid divisor: {0}")]
    Divisor(String),
    #[error("morphism check failed: {0}")]
    Morphism(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = core::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised across the quantum-set algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsetError {
    /// A rank (or rank-derived size) exceeded the allowed limit.
    #[error("rank guard: rank {rank} exceeds limit {limit}")]
    RankGuard { rank: u32, limit: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("set {0} is not a seed basis label")]
    NotInSeed(String),

    #[error("monomial {0} lies outside the operator basis")]
    NotInBasis(String),

    #[error("index {index} out of range 1..={max}")]
    IndexError { index: usize, max: usize },

    /// A bivector commutator escaped the bivector span.
    #[error("closure violation: [b{i}, b{j}] leaves the bivector span")]
    ClosureViolation { i: usize, j: usize },

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, QsetError>;

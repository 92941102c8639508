use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator is not Hermitian (max entry deviation {0:e})")]
    NonHermitian(f64),

    #[error("negative eigenvalue {0:e} below the cutoff")]
    NegativeSpectrum(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid prior: {0}")]
    InvalidPrior(String),

    #[error("invalid order alpha = {0}")]
    InvalidOrder(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero operator where a nonzero one is required")]
    ZeroOperator,

    #[error("support condition violated: {0}")]
    SupportViolation(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

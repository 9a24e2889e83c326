use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {0} is too small (need at least 2)")]
    DimensionTooSmall(usize),

    #[error("zero vector")]
    ZeroVector,

    #[error("vector lies outside the Lorentz cone")]
    OutsideCone,

    #[error("matrix is not {0}")]
    Structure(&'static str),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is ill-conditioned (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("dimension {0} exceeds the brute-force limit of 4")]
    TooLarge(usize),
}

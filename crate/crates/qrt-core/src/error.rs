use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {0} exceeds supported maximum {1}")]
    DimTooLarge(usize, usize),

    #[error("non-finite entries in input")]
    NonFinite,

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("operator set is linearly dependent (pivot {0:.3e})")]
    DependentSet(f64),

    #[error("state vector not normalized (|norm - 1| = {0:.3e})")]
    NotNormalized(f64),

    #[error("state annihilated by operator (image norm {0:.3e})")]
    Annihilated(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("linear algebra backend: {0}")]
    Backend(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Backend(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty set")]
    Empty,
    #[error("unbounded along direction {0:?}")]
    Unbounded(Vec<f64>),
    #[error("degenerate polytope: affine dimension {found}, expected {expected}")]
    Degenerate { expected: usize, found: usize },
    #[error("tolerance ambiguity: {0}")]
    ToleranceAmbiguity(String),
    #[error("general position violated: {0}")]
    GeneralPosition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular system: {0}")]
    Singular(String),
    #[error("certification missing: {0}")]
    Uncertified(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resample rate {rate:.4} exceeded the abort threshold after {resampled} resamples")]
    ResampleAbort { rate: f64, resampled: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

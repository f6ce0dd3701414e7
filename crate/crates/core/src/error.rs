use thiserror::Error;

/// Errors produced anywhere in the factorization pipeline.
#[derive(Debug, Error)]
pub enum MmfError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("rotation core is not orthogonal (|OᵀO - I|_F = {deviation:.3e})")]
    NotOrthogonal { deviation: f64 },

    #[error("singular matrix in linear solve")]
    Singular,

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("invalid candidate: {0}")]
    InvalidCandidate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("line search precondition violated: derivative at zero is {0}, expected < 0")]
    NotDescent(f64),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid factorization document: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, MmfError>;

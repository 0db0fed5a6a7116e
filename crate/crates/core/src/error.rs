use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("no non-standard antiholomorphic involution: {0}")]
    NotAdmissible(String),
    #[error("singularity profile violated: {0}")]
    Profile(String),
    #[error("polytope is not full-dimensional or the origin is not interior: {0}")]
    Degenerate(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("Condition Y violated: {0}")]
    ConditionY(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

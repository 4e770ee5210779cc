use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema violation: {0}")]
    Schema(String),

    /// A structural invariant that the algebra guarantees was found broken.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code under the CLI contract: 1 for failed checks, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) | Error::InvariantViolation(_) => 1,
            _ => 2,
        }
    }
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

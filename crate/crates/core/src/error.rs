use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("orbit exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("group is not transitive on its {degree} points")]
    Intransitive { degree: usize },

    #[error("group does not preserve the block multiset: {0}")]
    NotBlockPreserving(String),

    /// A design axiom fails; the message names the axiom and a witness.
    #[error("design axiom violated: {0}")]
    Axiom(String),

    #[error("inconsistent parameters: {0}")]
    InconsistentParameters(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

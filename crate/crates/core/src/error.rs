use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch ({context}): expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),

    #[error("weight {weight:?} is not dominant")]
    NotDominant { weight: Vec<i64> },

    #[error("not a module character: negative multiplicity at {weight:?}")]
    NotAModuleCharacter { weight: Vec<i64> },

    #[error("unknown embedding `{0}`")]
    UnknownEmbedding(String),

    #[error("invalid embedding `{name}`: {reason}")]
    InvalidEmbedding { name: String, reason: String },

    #[error("invalid face `{0}`")]
    InvalidFace(String),

    #[error("inconsistent flag: {0}")]
    InvalidFlag(String),

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pseudoinverse of an all-zero row is undefined")]
    ZeroRow,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{what}: expected {expected}, got {actual}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("activation `{0}` has no inverse usable for pseudoinverse training")]
    UnsupportedInverse(&'static str),

    #[error("unknown activation `{0}`")]
    UnknownActivation(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("configuration does not match dataset: {0}")]
    ConfigMismatch(String),

    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("label {label} out of range for {class_count} classes")]
    LabelOutOfRange { label: usize, class_count: usize },

    #[error("split leaves an empty partition ({train} train / {validation} validation rows)")]
    DegenerateSplit { train: usize, validation: usize },

    #[error("history is empty")]
    EmptyHistory,

    #[error("unsupported model format version {0}")]
    UnsupportedModelVersion(u32),

    #[error("invalid model: {0}")]
    InvalidModel(String),

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

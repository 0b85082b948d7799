use std::path::PathBuf;

/// Errors produced by the analysis library and the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("sampling rate {fs} Hz too low: {reason}")]
    Sampling { fs: f64, reason: String },

    #[error("simulation too short: {samples} samples, need at least {required}")]
    Duration { samples: usize, required: usize },

    #[error("invalid segmentation: {0}")]
    Segment(String),

    #[error("index {index} out of range for matched group of {len} members")]
    Index { index: usize, len: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {field}: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

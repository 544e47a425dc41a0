use std::path::PathBuf;

use thiserror::Error;

/// Which side of an alignment a segment came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Hypothesis,
    Reference,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Hypothesis => f.write_str("hypothesis"),
            Side::Reference => f.write_str("reference"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Decode { offset: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{side} segment {segment} is missing lemma/POS annotation")]
    AnnotationMissing { side: Side, segment: usize },

    #[error("shape mismatch: {what} has {found} segments, expected {expected}")]
    Shape {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("{0}")]
    Argument(String),

    #[error("baseline `{0}` has zero errors; cannot normalize")]
    DegenerateBaseline(String),

    #[error("unknown baseline `{0}`")]
    UnknownBaseline(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Wraps another error with the file it came from.
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {message}")]
    Config { path: PathBuf, message: String },
}

impl Error {
    pub fn in_file(self, path: impl Into<PathBuf>) -> Error {
        Error::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// Process exit status for this error: 2 for usage errors, 1 for data errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) | Error::UnknownBaseline(_) => 2,
            Error::InFile { source, .. } => source.exit_code(),
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

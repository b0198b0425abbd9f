use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the fitting pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("count {n} lies outside the truncated support 1..={truncation}; raise the truncation length")]
    SupportRange { n: u64, truncation: u64 },

    #[error("dataset `{0}` has already been shifted by one")]
    DoubleShift(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("result document has schema version {found}, this build reads version {expected}")]
    SchemaVersion { found: i64, expected: u32 },

    #[error("malformed result document: {0}")]
    Document(String),

    #[error("extended-precision oracle exceeded its budget after {terms_done} of {terms} terms")]
    OracleTimeout { terms_done: u64, terms: u64 },

    #[error("configuration conflict: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

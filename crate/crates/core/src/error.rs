use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("continued fraction did not converge after {iterations} iterations ({what})")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// All observations identical (or otherwise carrying no spread); MLE undefined.
    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("data quality: {0}")]
    DataQuality(String),

    #[error("alignment: {0}")]
    Alignment(String),

    #[error("insufficient window: {0}")]
    InsufficientWindow(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: u64, msg: String },

    #[error("{path}: no usable rows")]
    EmptySeries { path: PathBuf },

    #[error("manifest: {0}")]
    Manifest(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

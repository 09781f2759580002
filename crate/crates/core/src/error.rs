use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to decode {path}: {reason}")]
    Decode { path: PathBuf, reason: String },

    #[error("image too small: {width}x{height} (minimum 3x3)")]
    TooSmall { width: usize, height: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ingestion failed at {path}: {reason}")]
    Ingest { path: PathBuf, reason: String },

    #[error("index build failed for {} image(s): {}", .failures.len(), format_failures(.failures))]
    Build { failures: Vec<(String, String)> },

    #[error("unsupported index format version {found} (expected {expected})")]
    Version { found: String, expected: u32 },

    #[error("corrupt index file: {0}")]
    Integrity(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_failures(failures: &[(String, String)]) -> String {
    failures
        .iter()
        .map(|(id, reason)| format!("{id} ({reason})"))
        .collect::<Vec<_>>()
        .join(", ")
}

//! Fixture encodings, loaders, and the verification harness for the
//! E6(-14) engine. The binary target `e6` exposes the same functionality on
//! the command line.

pub mod fixtures;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("json error in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("schema violation in {path}: {detail}")]
    Schema { path: String, detail: String },
    #[error("invariant violation in {path} at record {record}: {detail}")]
    Invariant {
        path: String,
        record: String,
        detail: String,
    },
}

impl FixtureError {
    pub fn schema(path: &str, detail: impl Into<String>) -> FixtureError {
        FixtureError::Schema {
            path: path.to_string(),
            detail: detail.into(),
        }
    }

    pub fn invariant(
        path: &str,
        record: impl Into<String>,
        detail: impl Into<String>,
    ) -> FixtureError {
        FixtureError::Invariant {
            path: path.to_string(),
            record: record.into(),
            detail: detail.into(),
        }
    }
}

/// Default fixture directory, overridable via `E6_FIXTURE_DIR`.
pub fn fixture_dir() -> std::path::PathBuf {
    match std::env::var_os("E6_FIXTURE_DIR") {
        Some(dir) => std::path::PathBuf::from(dir),
        None => std::path::PathBuf::from("fixtures"),
    }
}

use std::io;

use thiserror::Error;

/// Failures of a run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum RunError {
    /// Malformed input or configuration (exit 2).
    #[error("config: {0}")]
    Config(String),
    /// A numerical gate failed (exit 1).
    #[error("gate '{gate}' failed: {detail}")]
    Gate { gate: String, detail: String },
    #[error("numerics: {0}")]
    Numerics(#[from] loctrace_core::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Csv(_) => 2,
            _ => 1,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        RunError::Config(msg.into())
    }
}

pub type RunResult<T> = Result<T, RunError>;

//! CSV and JSON writers shared by the subcommands.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::RunResult;

/// One pass/fail check recorded in a JSON summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gate {
    pub name: String,
    pub passed: bool,
    pub value: Option<f64>,
    pub threshold: Option<f64>,
    pub detail: String,
}

impl Gate {
    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        let passed = value <= threshold;
        Gate {
            name: name.into(),
            passed,
            value: Some(value),
            threshold: Some(threshold),
            detail: format!("{value:.3e} {} {threshold:.3e}", if passed { "<=" } else { ">" }),
        }
    }

    pub fn check(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Gate {
            name: name.into(),
            passed,
            value: None,
            threshold: None,
            detail: detail.into(),
        }
    }

    pub fn failed(name: &str, detail: impl Into<String>) -> Self {
        Self::check(name, false, detail)
    }
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> RunResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON with a trailing newline. serde_json prints floats in shortest
/// round-trip form, so equal inputs give byte-identical files.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> RunResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

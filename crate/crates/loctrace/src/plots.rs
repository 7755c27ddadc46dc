//! Two-column text files from a sweep CSV, ready for gnuplot.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{RunError, RunResult};

pub const TRACE_FILE: &str = "trace_vs_two_log_lambda.dat";
pub const RESIDUAL_FILE: &str = "residual_vs_lambda.dat";
pub const BOUND_FILE: &str = "bound_vs_lambda.dat";

#[derive(Debug, Clone, Deserialize)]
pub struct SweepRecord {
    pub lambda: f64,
    pub two_log_lambda: f64,
    #[serde(rename = "t_route_A")]
    pub t_route_a: f64,
    #[serde(rename = "t_route_B")]
    pub t_route_b: f64,
    #[serde(rename = "t_route_C")]
    pub t_route_c: Option<f64>,
    pub asymptote: f64,
    pub error_bound: f64,
    pub defect: f64,
}

/// Parses a sweep CSV. Any parse failure is reported as malformed input.
pub fn read_sweep_csv(path: &Path) -> RunResult<Vec<SweepRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| RunError::config(format!("{}: {e}", path.display())))?;
    let rows = r
        .deserialize()
        .collect::<Result<Vec<SweepRecord>, _>>()
        .map_err(|e| RunError::config(format!("malformed sweep CSV {}: {e}", path.display())))?;
    if rows.is_empty() {
        return Err(RunError::config(format!("sweep CSV {} has no rows", path.display())));
    }
    Ok(rows)
}

fn columns(pairs: impl Iterator<Item = (f64, f64)>) -> String {
    pairs.map(|(x, y)| format!("{x} {y}\n")).collect()
}

/// Writes the three curves into `out` and returns their paths.
pub fn emit_plots(csv: &Path, out: &Path) -> RunResult<Vec<PathBuf>> {
    let rows = read_sweep_csv(csv)?;
    fs::create_dir_all(out)?;
    let curves = [
        (TRACE_FILE, columns(rows.iter().map(|r| (r.two_log_lambda, r.t_route_b)))),
        (RESIDUAL_FILE, columns(rows.iter().map(|r| (r.lambda, r.t_route_b - r.asymptote)))),
        (BOUND_FILE, columns(rows.iter().map(|r| (r.lambda, r.error_bound)))),
    ];
    let mut paths = Vec::new();
    for (name, body) in curves {
        let p = out.join(name);
        fs::write(&p, body)?;
        paths.push(p);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_round_trip() {
        let text = columns([(0.1, -2.5e-12), (3.0, 4.0)].into_iter());
        assert_eq!(text, "0.1 -0.0000000000025\n3 4\n");
        for line in text.lines() {
            let v: Vec<f64> = line.split(' ').map(|x| x.parse().unwrap()).collect();
            assert_eq!(v.len(), 2);
        }
    }

    #[test]
    fn empty_csv_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.csv");
        std::fs::write(&p, "lambda,two_log_lambda,t_route_A,t_route_B,t_route_C,asymptote,error_bound,defect\n").unwrap();
        assert_eq!(read_sweep_csv(&p).unwrap_err().exit_code(), 2);
    }
}

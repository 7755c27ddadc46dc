//! Experiment runner for `loctrace-core`: JSON configs, Λ sweeps, the
//! finite-group sandbox suites and plot-ready output.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod output;
pub mod plots;
pub mod suites;
pub mod sweep;
pub mod verify;

pub use config::ExperimentConfig;
pub use error::{RunError, RunResult};
pub use suites::{run_sandbox, SandboxReport};
pub use sweep::{run_sweep, SweepOutcome};

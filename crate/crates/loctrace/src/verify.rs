//! `verify`: the default ℝ sweep, every sandbox suite and the plot files,
//! written into one directory.

use std::path::Path;

use loctrace_core::FieldId;

use crate::config::ExperimentConfig;
use crate::error::RunResult;
use crate::output::write_json;
use crate::plots::emit_plots;
use crate::suites::{run_sandbox, SandboxReport, DEFAULT_SEED, SUITES};
use crate::sweep::{run_sweep, SweepOutcome};

pub const SANDBOX_FILE: &str = "sandbox.json";

pub struct VerifyOutcome {
    pub sweep: SweepOutcome,
    pub sandbox: SandboxReport,
}

impl VerifyOutcome {
    pub fn check(&self) -> RunResult<()> {
        self.sweep.check()?;
        self.sandbox.check()
    }
}

/// Writes all artifacts before judging, so a failing gate still leaves
/// something to inspect.
pub fn run_verify(out: &Path, jobs: Option<usize>) -> RunResult<VerifyOutcome> {
    let cfg = ExperimentConfig::default_for(FieldId::R);
    let sweep = run_sweep(&cfg, jobs)?;
    sweep.write(&cfg, out)?;
    emit_plots(&out.join(&cfg.output.csv), &out.join("plots"))?;
    let names: Vec<String> = SUITES.iter().map(|s| s.to_string()).collect();
    let sandbox = run_sandbox(&names, DEFAULT_SEED)?;
    write_json(&out.join(SANDBOX_FILE), &sandbox)?;
    Ok(VerifyOutcome { sweep, sandbox })
}

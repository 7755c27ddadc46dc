use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use loctrace::config::ExperimentConfig;
use loctrace::error::RunResult;
use loctrace::output::write_json;
use loctrace::plots::emit_plots;
use loctrace::suites::{run_sandbox, DEFAULT_SEED, SUITES};
use loctrace::sweep::run_sweep;
use loctrace::verify::{run_verify, SANDBOX_FILE};
use loctrace_core::FieldId;

#[derive(Parser)]
#[command(name = "loctrace", version, about = "Cutoff trace experiments over R, C and H")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the cutoff and write the CSV table and JSON summary.
    TraceSweep {
        /// JSON experiment config; defaults to the standard sweep for --field.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Field to use, overriding the config.
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldId>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run finite-group sandbox suites and write sandbox.json.
    Sandbox {
        /// Suite to run; repeatable. Default: all suites.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Seed for the random operators and test vectors.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Default R sweep, all sandbox suites and plot files.
    Verify {
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Turn a sweep CSV into two-column plot files.
    EmitPlots {
        csv: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn parse_field(s: &str) -> Result<FieldId, String> {
    FieldId::parse(s).ok_or_else(|| format!("unknown field '{s}' (expected R, C or H)"))
}

fn run(cli: Cli) -> RunResult<()> {
    match cli.command {
        Command::TraceSweep { config, field, out, jobs } => {
            let mut cfg = match (&config, field) {
                (Some(p), _) => ExperimentConfig::from_path(p)?,
                (None, f) => ExperimentConfig::default_for(f.unwrap_or(FieldId::R)),
            };
            if let (Some(_), Some(f)) = (&config, field) {
                cfg.field = f.name().into();
                if f != FieldId::R {
                    cfg.route_c = None;
                }
                cfg.validate()?;
            }
            let outcome = run_sweep(&cfg, jobs)?;
            outcome.write(&cfg, &out)?;
            println!("{}", out.join(&cfg.output.csv).display());
            println!("{}", out.join(&cfg.output.json).display());
            outcome.check()
        }
        Command::Sandbox { suites, out, seed } => {
            let names = if suites.is_empty() {
                SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                suites
            };
            let report = run_sandbox(&names, seed)?;
            std::fs::create_dir_all(&out)?;
            let path = out.join(SANDBOX_FILE);
            write_json(&path, &report)?;
            println!("{}", path.display());
            report.check()
        }
        Command::Verify { out, jobs } => {
            std::fs::create_dir_all(&out)?;
            let v = run_verify(&out, jobs)?;
            for g in &v.sweep.summary.gates {
                println!("{} {} {}", if g.passed { "PASS" } else { "FAIL" }, g.name, g.detail);
            }
            for s in &v.sandbox.suites {
                println!("{} {}", if s.passed { "PASS" } else { "FAIL" }, s.suite);
            }
            v.check()
        }
        Command::EmitPlots { csv, out } => {
            for p in emit_plots(&csv, &out)? {
                println!("{}", p.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LOCTRACE_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}


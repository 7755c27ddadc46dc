//! The `trace-sweep` pipeline: routes A/B (and C on ℝ) over a list of
//! cutoffs, the asymptotic fit and the gates that decide the exit code.

use std::path::Path;
use std::sync::Arc;

use loctrace_core::fourier::FourierGate;
use loctrace_core::trace::{asymptotic_fit, select_in_regime, FullLineTrace};
use loctrace_core::{ConnesTrace, FieldBackend, FieldId, FourierOperator, RadialGrid, SignedGrid, TestFunction, TraceReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, TestFunctionKind};
use crate::error::{RunError, RunResult};
use crate::output::{write_csv, write_json, Gate};

/// Relative `|A − B| / |B|` tolerance per field.
pub fn route_tolerance(field: FieldId) -> f64 {
    match field {
        FieldId::R => 1e-3,
        FieldId::C | FieldId::H => 5e-3,
    }
}

pub const ROUTE_C_TOLERANCE: f64 = 1e-3;
/// Relative tolerance on slope against `f(1)` and intercept against `−H(f)(1)`.
pub const FIT_TOLERANCE: f64 = 0.01;
/// Slack on the sandwich, in units of `defect · ‖f‖₁`.
pub const SANDWICH_SLACK: f64 = 10.0;

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
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

impl From<&TraceReport> for SweepRow {
    fn from(r: &TraceReport) -> Self {
        SweepRow {
            lambda: r.lambda,
            two_log_lambda: 2.0 * r.lambda.ln(),
            t_route_a: r.t_route_a,
            t_route_b: r.t_route_b,
            t_route_c: r.t_route_c,
            asymptote: r.asymptote,
            error_bound: r.error_bound,
            defect: r.unitarity_defect,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitSummary {
    pub f1_estimate: f64,
    #[serde(rename = "minus_H_estimate")]
    pub minus_h_estimate: f64,
    pub lambdas: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridSummary {
    pub n: usize,
    pub step: f64,
    pub half_range: f64,
    pub route_c_nodes: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub field: String,
    pub grid: GridSummary,
    pub f_at_1: f64,
    pub f_at_1_numeric: f64,
    pub l1_norm: f64,
    pub h_f_at_1: f64,
    pub h_if_at_1: f64,
    pub defect: f64,
    pub route_c_defect: Option<f64>,
    pub fit: Option<FitSummary>,
    pub gates: Vec<Gate>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub reports: Vec<TraceReport>,
    pub summary: SweepSummary,
}

impl SweepOutcome {
    pub fn rows(&self) -> Vec<SweepRow> {
        self.reports.iter().map(SweepRow::from).collect()
    }

    /// Writes the CSV and JSON named in `cfg.output` under `dir`.
    pub fn write(&self, cfg: &ExperimentConfig, dir: &Path) -> RunResult<()> {
        std::fs::create_dir_all(dir)?;
        write_csv(&dir.join(&cfg.output.csv), &self.rows())?;
        write_json(&dir.join(&cfg.output.json), &self.summary)
    }

    /// `Err(Gate)` naming the first failed gate, if any.
    pub fn check(&self) -> RunResult<()> {
        match self.summary.gates.iter().find(|g| !g.passed) {
            None => Ok(()),
            Some(g) => Err(RunError::Gate {
                gate: g.name.clone(),
                detail: g.detail.clone(),
            }),
        }
    }
}

pub fn test_function_of(cfg: &ExperimentConfig) -> RunResult<TestFunction> {
    let tf = &cfg.test_function;
    Ok(match tf.kind {
        TestFunctionKind::GaussianBump => TestFunction::gaussian_bump(tf.center, tf.width, tf.support_radius)?,
        TestFunctionKind::Zero => TestFunction::zero(),
    })
}

pub fn grid_of(cfg: &ExperimentConfig) -> RunResult<RadialGrid> {
    let backend = FieldBackend::new(cfg.field_id()?);
    let g = &cfg.grid;
    Ok(match g.align_to {
        Some(a) => RadialGrid::aligned(backend, g.log_t_half_range, g.n, a)?,
        None => RadialGrid::new(backend, g.log_t_half_range, g.n)?,
    })
}

fn pool(jobs: Option<usize>) -> RunResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(RunError::config("--jobs must be at least 1"));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| RunError::config(e.to_string()))
}

/// Runs the sweep. Numerical failures that prevent a result (a rejected
/// Fourier matrix, a support overflow) are errors; everything else is
/// recorded as a gate so the outputs can still be written.
pub fn run_sweep(cfg: &ExperimentConfig, jobs: Option<usize>) -> RunResult<SweepOutcome> {
    cfg.validate()?;
    let field = cfg.field_id()?;
    let f = test_function_of(cfg)?;
    let grid = Arc::new(grid_of(cfg)?);
    if cfg.test_function.support_radius >= grid.half_range() {
        return Err(RunError::config("test_function.support_radius must lie inside the grid"));
    }
    let pool = pool(jobs)?;
    log::info!("field {} n={} h={:.6e}", field.name(), grid.len(), grid.step());

    let build_a = || -> RunResult<ConnesTrace> {
        let fo = FourierOperator::build(grid.clone(), FourierGate::for_field(field))?;
        Ok(ConnesTrace::new(fo, f)?)
    };
    let route_c_lambdas: Vec<f64> = match &cfg.route_c {
        Some(rc) => {
            let max = rc.t_max * (-1.5f64).exp();
            cfg.lambdas.iter().copied().filter(|l| *l <= max).collect()
        }
        None => Vec::new(),
    };
    let build_c = || -> RunResult<Option<(FullLineTrace, Vec<f64>)>> {
        let Some(rc) = &cfg.route_c else { return Ok(None) };
        if route_c_lambdas.is_empty() {
            return Ok(None);
        }
        let sg = Arc::new(SignedGrid::aligned(grid.step(), rc.t_max, rc.n_half)?);
        let flt = FullLineTrace::new(sg, f, rc.defect_threshold)?;
        let t = flt.traces(&route_c_lambdas)?;
        Ok(Some((flt, t.iter().map(|z| z.re).collect())))
    };

    let (ct, route_c) = pool.install(|| rayon::join(build_a, build_c));
    let ct = ct?;
    let route_c = route_c?;
    if let Some(l) = cfg.lambdas.iter().find(|l| **l > ct.max_lambda()) {
        return Err(RunError::config(format!("cutoff {l} exceeds the grid (max {})", ct.max_lambda())));
    }

    let mut reports = pool.install(|| {
        cfg.lambdas
            .par_iter()
            .map(|&l| ct.report(l))
            .collect::<Result<Vec<_>, _>>()
    })?;
    if let Some((_, values)) = &route_c {
        for (l, v) in route_c_lambdas.iter().zip(values) {
            if let Some(r) = reports.iter_mut().find(|r| r.lambda == *l) {
                r.t_route_c = Some(*v);
            }
        }
    }
    for r in &reports {
        log::info!("Λ={} A={:.10} B={:.10} bound={:.3e}", r.lambda, r.t_route_a, r.t_route_b, r.error_bound);
    }

    let f1 = f.value_at_1();
    let l1 = f.l1_mult();
    let conductor = ct.conductor_at_one();
    let defect = ct.defect();
    let mut gates = Vec::new();

    let threshold = FourierGate::for_field(field).defect_threshold;
    gates.push(Gate::at_most("fourier_defect", defect, threshold));

    let route_rel = reports
        .iter()
        .map(|r| relative(r.t_route_a, r.t_route_b))
        .fold(0.0, f64::max);
    gates.push(Gate::at_most("route_agreement", route_rel, route_tolerance(field)));

    if route_c.is_some() {
        let c_rel = reports
            .iter()
            .filter_map(|r| r.t_route_c.map(|c| relative(c, r.t_route_b)))
            .fold(0.0, f64::max);
        gates.push(Gate::at_most("route_c_agreement", c_rel, ROUTE_C_TOLERANCE));
    }

    // |T − asymptote| ≤ bound + slack, reported as the worst excess ratio.
    let slack = SANDWICH_SLACK * defect * l1;
    let sandwich = reports
        .iter()
        .map(|r| {
            let allowed = r.error_bound + slack;
            let gap = (r.t_route_b - r.asymptote).abs();
            if allowed > 0.0 {
                gap / allowed
            } else if gap == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max);
    gates.push(Gate::at_most("asymptote_sandwich", sandwich, 1.0));

    let in_regime = select_in_regime(&reports);
    let fit = match asymptotic_fit(&in_regime) {
        Ok(fr) => {
            let slope_err = relative(fr.f1_estimate, f1);
            let icpt_err = relative(fr.minus_h_estimate, -conductor.h_f_at_1);
            gates.push(Gate::at_most("fit_slope", slope_err, FIT_TOLERANCE));
            gates.push(Gate::at_most("fit_intercept", icpt_err, FIT_TOLERANCE));
            Some(FitSummary {
                f1_estimate: fr.f1_estimate,
                minus_h_estimate: fr.minus_h_estimate,
                lambdas: fr.lambdas,
                residuals: fr.residuals,
                max_residual: fr.max_residual,
            })
        }
        Err(e) => {
            gates.push(Gate::failed("asymptotic_fit", format!("{e} ({} cutoffs in regime)", in_regime.len())));
            None
        }
    };

    let passed = gates.iter().all(|g| g.passed);
    let summary = SweepSummary {
        field: field.name().into(),
        grid: GridSummary {
            n: grid.len(),
            step: grid.step(),
            half_range: grid.half_range(),
            route_c_nodes: route_c.as_ref().map(|(t, _)| t.grid().len()),
        },
        f_at_1: f1,
        f_at_1_numeric: ct.f1_numeric(),
        l1_norm: l1,
        h_f_at_1: conductor.h_f_at_1,
        h_if_at_1: conductor.h_if_at_1,
        defect,
        route_c_defect: route_c.as_ref().map(|(t, _)| t.unitarity_defect()),
        fit,
        gates,
        passed,
    };
    Ok(SweepOutcome { reports, summary })
}

/// `|a − b| / |b|`, or `|a − b|` when `b` vanishes.
pub fn relative(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if b == 0.0 {
        d
    } else {
        d / b.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_falls_back_to_absolute() {
        assert_eq!(relative(3.0, 2.0), 0.5);
        assert_eq!(relative(1e-3, 0.0), 1e-3);
        assert_eq!(relative(0.0, 0.0), 0.0);
    }

    #[test]
    fn gates_name_the_first_failure() {
        let mut cfg = ExperimentConfig::default_for(FieldId::C);
        cfg.grid.n = 512;
        cfg.test_function.kind = TestFunctionKind::Zero;
        let out = run_sweep(&cfg, Some(1)).unwrap();
        assert!(!out.summary.passed);
        assert!(out.summary.fit.is_none());
        match out.check() {
            Err(RunError::Gate { gate, .. }) => assert_eq!(gate, "asymptotic_fit"),
            other => panic!("{other:?}"),
        }
        assert!(out.rows().iter().all(|r| r.t_route_a == 0.0 && r.t_route_c.is_none()));
    }

    #[test]
    fn zero_jobs_rejected() {
        let cfg = ExperimentConfig::default_for(FieldId::C);
        assert_eq!(run_sweep(&cfg, Some(0)).unwrap_err().exit_code(), 2);
    }
}

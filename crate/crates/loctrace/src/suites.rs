//! The `sandbox` suites: finite-group checks of the commutant, multiplier,
//! polar and resolvent mechanisms.

use std::collections::BTreeMap;

use loctrace_core::linalg::{commutator, diag, frobenius, CMatrix};
use loctrace_core::sandbox::commutant::character_action;
use loctrace_core::sandbox::{
    abelian_groups_up_to, commutant_of_characters, commutant_of_set, multiplier_of, polar_decompose,
    resolvent_normality_check, FiniteGroup,
};
use loctrace_core::{Complex64, Error as CoreError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{RunError, RunResult};

pub const SUITES: [&str; 3] = ["annex2-abelian-le-12", "annex1-biregular", "annex1-characters-z8"];
pub const DEFAULT_SEED: u64 = 8;

const OFF_DIAGONAL_TOL: f64 = 1e-10;
const RECONSTRUCTION_TOL: f64 = 1e-12;
const PSI_INDEPENDENCE_TOL: f64 = 1e-10;
const POLAR_TOL: f64 = 1e-10;
const POLAR_COMMUTE_TOL: f64 = 1e-8;
const NORMALITY_TOL: f64 = 1e-8;
const RANDOM_OPERATORS: usize = 50;

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub passed: bool,
    pub metrics: BTreeMap<String, f64>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: Vec<CaseReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandboxReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl SandboxReport {
    pub fn check(&self) -> RunResult<()> {
        for s in &self.suites {
            if let Some(c) = s.cases.iter().find(|c| !c.passed) {
                return Err(RunError::Gate {
                    gate: format!("{}/{}", s.suite, c.name),
                    detail: c.detail.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Accumulates metrics and failed checks for one case.
struct Case {
    name: String,
    metrics: BTreeMap<String, f64>,
    failures: Vec<String>,
}

impl Case {
    fn new(name: impl Into<String>) -> Self {
        Case {
            name: name.into(),
            metrics: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    fn at_most(&mut self, key: &str, value: f64, tol: f64) {
        self.metrics.insert(key.into(), value);
        if !(value <= tol) {
            self.failures.push(format!("{key} = {value:.3e} > {tol:.0e}"));
        }
    }

    fn expect(&mut self, key: &str, got: usize, want: usize) {
        self.metrics.insert(key.into(), got as f64);
        if got != want {
            self.failures.push(format!("{key} = {got}, expected {want}"));
        }
    }

    fn require(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn error(&mut self, e: impl std::fmt::Display) {
        self.failures.push(e.to_string());
    }

    fn finish(self) -> CaseReport {
        let passed = self.failures.is_empty();
        CaseReport {
            name: self.name,
            passed,
            metrics: self.metrics,
            detail: if passed { "ok".into() } else { self.failures.join("; ") },
        }
    }
}

/// Runs the named suites in the given order. Unknown names are a usage error.
pub fn run_sandbox(names: &[String], seed: u64) -> RunResult<SandboxReport> {
    for n in names {
        if !SUITES.contains(&n.as_str()) {
            return Err(RunError::config(format!(
                "unknown suite '{n}' (known: {})",
                SUITES.join(", ")
            )));
        }
    }
    let suites: Vec<SuiteReport> = names
        .iter()
        .map(|n| {
            log::info!("suite {n}");
            let cases = match n.as_str() {
                "annex2-abelian-le-12" => abelian_suite(seed),
                "annex1-biregular" => biregular_suite(seed),
                _ => characters_z8_suite(seed),
            };
            SuiteReport {
                suite: n.clone(),
                passed: cases.iter().all(|c| c.passed),
                cases,
            }
        })
        .collect();
    Ok(SandboxReport {
        seed,
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

fn max_entry(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Modulus in `[0.5, 1.5]`, so never zero.
fn random_nowhere_zero(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect()
}

fn max_commutator_with(m: &CMatrix, action: &[CMatrix]) -> f64 {
    action.iter().map(|x| frobenius(&commutator(m, x))).fold(0.0, f64::max)
}

fn abelian_suite(seed: u64) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    abelian_groups_up_to(12)
        .iter()
        .map(|factors| {
            let g = match FiniteGroup::cyclic_product(factors) {
                Ok(g) => g,
                Err(e) => {
                    let mut c = Case::new(format!("{factors:?}"));
                    c.error(e);
                    return c.finish();
                }
            };
            let mut c = Case::new(g.name());
            if let Err(e) = abelian_case(&g, &mut rng, &mut c) {
                c.error(e);
            }
            c.finish()
        })
        .collect()
}

fn abelian_case(g: &FiniteGroup, rng: &mut ChaCha8Rng, c: &mut Case) -> Result<(), CoreError> {
    let n = g.order();
    let chars = character_action(g)?;
    let comm = commutant_of_characters(g)?;
    c.expect("commutant_dimension", comm.dimension(), n);
    c.at_most("off_diagonal_mass", comm.off_diagonal_mass(), OFF_DIAGONAL_TOL);
    c.require("commutant not abelian", comm.is_abelian);

    // Negative control: the trivial character alone leaves everything.
    if n >= 2 {
        let reduced = commutant_of_set(&chars[..1], n);
        c.expect("reduced_commutant_dimension", reduced.dimension(), n * n);
    }

    let entries: Vec<Complex64> = (0..n).map(|_| random_complex(rng)).collect();
    let m = diag(&entries);
    let ones = vec![Complex64::new(1.0, 0.0); n];
    let psi = random_nowhere_zero(rng, n);
    let a1 = multiplier_of(&m, &chars, &ones)?;
    let a2 = multiplier_of(&m, &chars, &psi)?;
    c.at_most("reconstruction_error", max_entry(&(diag(&a1) - &m)), RECONSTRUCTION_TOL);
    c.at_most("psi_independence", max_diff(&a1, &a2), PSI_INDEPENDENCE_TOL);
    let adj = multiplier_of(&m.adjoint(), &chars, &psi)?;
    let conj: Vec<Complex64> = a1.iter().map(|z| z.conj()).collect();
    c.at_most("adjoint_error", max_diff(&adj, &conj), RECONSTRUCTION_TOL);

    let (u, p) = polar_decompose(&m);
    c.at_most("polar_error", frobenius(&(&u * &p - &m)), POLAR_TOL);
    let comm_up = max_commutator_with(&u, &chars).max(max_commutator_with(&p, &chars));
    c.at_most("polar_commutator", comm_up, POLAR_COMMUTE_TOL);
    Ok(())
}

fn resolvent_case(c: &mut Case, m: &CMatrix, action: &[CMatrix]) -> f64 {
    match resolvent_normality_check(m, action) {
        Ok(r) => {
            c.require("M ± i not full rank", r.full_rank());
            r.normality_defect
        }
        Err(e) => {
            c.error(e);
            f64::INFINITY
        }
    }
}

fn biregular_suite(seed: u64) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0b1e);
    [FiniteGroup::symmetric3(), FiniteGroup::quaternion8(), FiniteGroup::dihedral4()]
        .iter()
        .map(|g| {
            let mut c = Case::new(g.name());
            let action = g.biregular_action();
            let classes = g.conjugacy_classes().len();
            let comm = commutant_of_set(&action, g.order());
            c.expect("commutant_dimension", comm.dimension(), classes);
            c.require("commutant not abelian", comm.is_abelian);
            c.metrics.insert("class_count".into(), classes as f64);
            let mut worst: f64 = 0.0;
            for _ in 0..10 {
                let values: Vec<Complex64> = (0..classes)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
                    .collect();
                match g.class_convolution(&values) {
                    Ok(m) => worst = worst.max(resolvent_case(&mut c, &m, &action)),
                    Err(e) => c.error(e),
                }
            }
            c.at_most("normality_defect", worst, NORMALITY_TOL);
            c.finish()
        })
        .collect()
}

fn characters_z8_suite(seed: u64) -> Vec<CaseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x28);
    let g = match FiniteGroup::cyclic_product(&[8]) {
        Ok(g) => g,
        Err(e) => {
            let mut c = Case::new("Z/8");
            c.error(e);
            return vec![c.finish()];
        }
    };
    let n = g.order();
    let mut out = Vec::new();

    // Real diagonal M: symmetric and commuting with every character.
    let mut c = Case::new("random-diagonal");
    match character_action(&g) {
        Ok(chars) => {
            let mut worst: f64 = 0.0;
            for _ in 0..RANDOM_OPERATORS {
                let d: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-3.0..3.0), 0.0)).collect();
                worst = worst.max(resolvent_case(&mut c, &diag(&d), &chars));
            }
            c.metrics.insert("operators".into(), RANDOM_OPERATORS as f64);
            c.at_most("normality_defect", worst, NORMALITY_TOL);
        }
        Err(e) => c.error(e),
    }
    out.push(c.finish());

    // Symmetric circulants commute with the translations, whose commutant
    // (the circulants) is abelian.
    let mut c = Case::new("symmetric-circulant");
    let action = g.translation_action();
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let mut coef: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for k in 1..n {
            coef[n - k] = coef[k];
        }
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex64::new(coef[(i + n - j) % n], 0.0);
            }
        }
        worst = worst.max(resolvent_case(&mut c, &m, &action));
    }
    c.at_most("normality_defect", worst, NORMALITY_TOL);
    out.push(c.finish());

    // A symmetric M that mixes points must be rejected.
    let mut c = Case::new("non-commuting-rejected");
    if let Ok(chars) = character_action(&g) {
        let mut m = CMatrix::identity(n, n);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        m[(1, 0)] = Complex64::new(1.0, 0.0);
        let rejected = matches!(resolvent_normality_check(&m, &chars), Err(CoreError::NotCommuting { .. }));
        c.require("non-commuting M accepted", rejected);
    }
    out.push(c.finish());
    out
}

//! `T(Λ) = Tr(P̃_Λ P_Λ U_f)` by three routes, with the conductor term and the
//! tail bound.
//!
//! With `G = F(I(f)_a)` sampled on the product grid (where `t_i t_j` lands):
//!
//! - route A pairs kernels over the box `t_i, t_j ≤ Λ`;
//! - route B integrates `(2 log Λ − log z)₊ λ(z) G(z)` over `m(z) ≤ Λ²`;
//! - route C ([`full_line`]) traces dense matrices on the signed ℝ grid.

pub mod fit;
pub mod full_line;

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fourier::{build_fourier, FourierOperator};
use crate::grid::{RadialFunction, RadialGrid};
use crate::kernel::CharacterKernel;
use crate::test_function::TestFunction;

pub use fit::{asymptotic_fit, select_in_regime, FitResult};
pub use full_line::FullLineTrace;

/// `I(f)(t) = f(1/t)`: index reversal on the symmetric grid.
pub fn inversion(f: &RadialFunction) -> Result<RadialFunction> {
    let g = &f.grid;
    let lt = g.log_t();
    if (0..g.len()).any(|i| lt[i] + lt[g.reversal(i)] != 0.0) {
        return Err(Error::Domain("inversion needs a grid symmetric about t = 1".into()));
    }
    let samples = (0..g.len()).map(|i| f.samples[g.reversal(i)]).collect();
    RadialFunction::new(g.clone(), samples)
}

/// `F(I(f)_a)` on the grid nodes.
pub fn i_f_additive_tilde(fourier: &FourierOperator, f: &RadialFunction) -> Result<RadialFunction> {
    let ia = inversion(f)?.to_additive();
    RadialFunction::new(fourier.grid().clone(), fourier.apply(&ia.samples))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConductorValue {
    /// `H(f)(1)`, from `G = F(I(f)_a)`.
    pub h_f_at_1: f64,
    /// The same evaluation with `f` and `I(f)` exchanged.
    pub h_if_at_1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceReport {
    pub lambda: f64,
    pub t_route_a: f64,
    pub t_route_b: f64,
    pub t_route_c: Option<f64>,
    /// `2 log Λ · f(1) − H(f)(1)`.
    pub asymptote: f64,
    pub error_bound: f64,
    pub unitarity_defect: f64,
}

/// One radial sample of the additive transform of a product-grid profile.
struct ProductProfile {
    grid: RadialGrid,
    /// `G` and `K·G` on the product nodes.
    g: Vec<Complex64>,
    kg: Vec<Complex64>,
    sqrt_omega: f64,
}

impl ProductProfile {
    fn new(fourier: &FourierOperator, h_a: &[Complex64]) -> Self {
        let grid = fourier.grid().product_grid();
        let g = fourier.transform_onto(h_a, grid.t());
        let k = fourier.kernel();
        let kg = g.iter().zip(grid.t()).map(|(g, &t)| g * k.eval(t)).collect();
        let sqrt_omega = grid.backend().omega.sqrt();
        ProductProfile {
            grid,
            g,
            kg,
            sqrt_omega,
        }
    }

    /// `√ω ∫ (a + b log m(z)) λ(z) G(z) dz` restricted to `log m(z) ≤ cut`.
    fn log_moment(&self, a: f64, b: f64, cut: f64) -> f64 {
        let eps = 1e-9 * self.grid.step();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((kg, &u), w) in self.kg.iter().zip(self.grid.log_t()).zip(self.grid.w_add()) {
            if u > cut + eps {
                break;
            }
            acc += kg * ((a + b * u) * w);
        }
        for (c, kg) in self.grid.origin_ball().log_moment_weights(a, b).iter().zip(&self.kg) {
            acc += kg * c;
        }
        self.sqrt_omega * acc.re
    }
}

/// The trace pipeline for one test function on one radial grid.
pub struct ConnesTrace {
    fourier: FourierOperator,
    test_function: TestFunction,
    f: RadialFunction,
    profile: ProductProfile,
    /// Additive weights completed by the origin ball.
    completed: Vec<f64>,
    conductor: ConductorValue,
    f1_numeric: f64,
}

impl ConnesTrace {
    /// Builds `F` with the field's default gate.
    pub fn from_grid(grid: Arc<RadialGrid>, f: TestFunction) -> Result<Self> {
        let fourier = build_fourier(&grid.backend().clone(), grid)?;
        Self::new(fourier, f)
    }

    pub fn new(fourier: FourierOperator, test_function: TestFunction) -> Result<Self> {
        let grid = fourier.grid().clone();
        let f = test_function.sample(&grid)?;
        let profile = ProductProfile::new(&fourier, &inversion(&f)?.to_additive().samples);
        let direct = ProductProfile::new(&fourier, &f.to_additive().samples);
        let top = profile.grid.half_range();
        let conductor = ConductorValue {
            h_f_at_1: profile.log_moment(0.0, 1.0, top),
            h_if_at_1: direct.log_moment(0.0, 1.0, top),
        };
        let f1_numeric = profile.log_moment(1.0, 0.0, top);
        Ok(ConnesTrace {
            completed: grid.completed_additive_weights(),
            fourier,
            test_function,
            f,
            profile,
            conductor,
            f1_numeric,
        })
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        self.fourier.grid()
    }
    pub fn fourier(&self) -> &FourierOperator {
        &self.fourier
    }
    pub fn test_function(&self) -> &TestFunction {
        &self.test_function
    }
    pub fn samples(&self) -> &RadialFunction {
        &self.f
    }
    pub fn conductor_at_one(&self) -> ConductorValue {
        self.conductor
    }

    /// `f(1)` recovered as `F⁻¹ G` at 1, a check on the whole chain.
    pub fn f1_numeric(&self) -> f64 {
        self.f1_numeric
    }

    /// Defect propagated into reports: the probe defect of `F`, or the
    /// `F⁻¹F = 1` error on `f` itself (`|f1_numeric − f(1)| / ‖f‖₁`), whichever
    /// is larger.
    pub fn defect(&self) -> f64 {
        let l1 = self.test_function.l1_mult();
        let own = if l1 > 0.0 {
            (self.f1_numeric - self.test_function.value_at_1()).abs() / l1
        } else {
            0.0
        };
        self.fourier.unitarity_defect().max(own)
    }

    /// `G = F(I(f)_a)` on the product grid.
    pub fn g_product(&self) -> (&RadialGrid, &[Complex64]) {
        (&self.profile.grid, &self.profile.g)
    }

    pub fn max_lambda(&self) -> f64 {
        self.grid().t_max()
    }

    fn check_lambda(&self, lambda: f64) -> Result<()> {
        if !(lambda > 0.0) || lambda > self.max_lambda() {
            return Err(Error::LambdaOutOfRange {
                lambda,
                max_lambda: self.max_lambda(),
            });
        }
        Ok(())
    }

    /// Route A: `(1/√ω) Σ_{t_i, t_j ≤ Λ} K G(t_i t_j) v_i v_j`.
    pub fn trace_route_a(&self, lambda: f64) -> Result<f64> {
        self.check_lambda(lambda)?;
        let s = self.grid().count_at_most(lambda);
        let v = &self.completed[..s];
        let kg = &self.profile.kg;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, vi) in v.iter().enumerate() {
            let row: Complex64 = kg[i..i + s].iter().zip(v).map(|(k, vj)| k * vj).sum();
            acc += row * vi;
        }
        Ok(acc.re / self.profile.sqrt_omega)
    }

    /// Route B: `√ω ∫_{m(z) ≤ Λ²} (2 log Λ − log m(z)) λ(z) G(z) dz`.
    pub fn trace_route_b(&self, lambda: f64) -> Result<f64> {
        self.check_lambda(lambda)?;
        let two_log = 2.0 * lambda.ln();
        Ok(self.profile.log_moment(two_log, -1.0, two_log))
    }

    /// Route B assembled on the Fourier side: `(2 log Λ − B)₊` multiplies `G`,
    /// `F⁻¹` is evaluated at `t = 1` and mapped back to the multiplicative
    /// picture.
    pub fn trace_route_b_fourier_side(&self, lambda: f64) -> Result<f64> {
        self.check_lambda(lambda)?;
        let two_log = 2.0 * lambda.ln();
        let weight = |z: f64| (two_log - z.ln()).max(0.0);
        let at_one = weighted_inverse_at(&self.profile.grid, self.fourier.kernel(), &self.profile.g, 1.0, weight);
        // h(1) = h_a(1) · √(ω · 1).
        Ok(at_one.re * self.profile.sqrt_omega)
    }

    /// `√ω ∫_{m(z) ≥ Λ²} |log m(z)| |G(z)| dz` over the product grid.
    pub fn error_bound(&self, lambda: f64) -> Result<f64> {
        self.check_lambda(lambda)?;
        let cut = 2.0 * lambda.ln() - 1e-9 * self.profile.grid.step();
        let g = &self.profile;
        let s: f64 = g
            .grid
            .log_t()
            .iter()
            .zip(&g.g)
            .zip(g.grid.w_add())
            .filter(|((u, _), _)| **u >= cut)
            .map(|((u, z), w)| u.abs() * z.norm() * w)
            .sum();
        Ok(g.sqrt_omega * s)
    }

    pub fn asymptote(&self, lambda: f64) -> f64 {
        2.0 * lambda.ln() * self.test_function.value_at_1() - self.conductor.h_f_at_1
    }

    pub fn report(&self, lambda: f64) -> Result<TraceReport> {
        Ok(TraceReport {
            lambda,
            t_route_a: self.trace_route_a(lambda)?,
            t_route_b: self.trace_route_b(lambda)?,
            t_route_c: None,
            asymptote: self.asymptote(lambda),
            error_bound: self.error_bound(lambda)?,
            unitarity_defect: self.defect(),
        })
    }
}

/// `∫ K(t m(z)) w(m(z)) φ(z) dz` for samples `φ` on `grid`, with the weight
/// folded into the origin-ball rule rather than extrapolated.
fn weighted_inverse_at(
    grid: &RadialGrid,
    kernel: &CharacterKernel,
    samples: &[Complex64],
    t: f64,
    weight: impl Fn(f64) -> f64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((s, &z), w) in samples.iter().zip(grid.t()).zip(grid.w_add()) {
        let k = weight(z);
        if k != 0.0 {
            acc += s * (kernel.eval(t * z) * k * w);
        }
    }
    let ball = grid.origin_ball().kernel_weights(|u| kernel.eval(t * u) * weight(u));
    for (c, s) in ball.iter().zip(samples) {
        acc += s * c;
    }
    acc
}

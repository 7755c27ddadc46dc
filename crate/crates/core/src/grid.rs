//! Log-uniform grids on the module axis.
//!
//! Nodes sit at `log t = (k + ½)·h` offsets from a symmetric layout, so that
//! quotients and products of nodes land on the integer lattice `k·h`, which
//! contains `t = 1`. Quadrature is the trapezoid rule in `log t` with the
//! second-order Gregory end correction. The ball `{m(x) < t₀}` below the first
//! node is covered by extrapolating the samples as a cubic in `q = r²`, the
//! variable in which smooth radial functions are power series.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::field::FieldBackend;
use crate::linalg::gauss_legendre_unit;
use crate::operator::Picture;

/// Highest polynomial degree (in `q`) used for the origin ball.
const BALL_DEGREE: usize = 3;
const BALL_GAUSS_NODES: usize = 40;

/// Trapezoid weights in `log t` with Gregory end corrections.
pub(crate) fn gregory_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![h; n];
    if n >= 4 {
        w[0] = 5.0 * h / 12.0;
        w[n - 1] = 5.0 * h / 12.0;
        w[1] = 13.0 * h / 12.0;
        w[n - 2] = 13.0 * h / 12.0;
    } else if n >= 2 {
        w[0] = h / 2.0;
        w[n - 1] = h / 2.0;
    }
    w
}

/// Polynomial completion over `{m(x) < t₀}` on the first few nodes.
///
/// Samples `φ_k` at nodes `t_0 < t_1 < …` are extended below `t₀` by the
/// Lagrange polynomial in `s = q/q₀`. Integrals against that extension reduce
/// to fixed weights on the first `degree + 1` samples.
#[derive(Debug, Clone)]
pub struct OriginBall {
    /// Module of the innermost node.
    pub t0: f64,
    pub omega: f64,
    dim: usize,
    /// `coeffs[j][k]`: coefficient of `s^k` in the j-th Lagrange basis polynomial.
    coeffs: Vec<Vec<f64>>,
    // Gauss nodes ρ ∈ [0,1] (r = r₀ ρ), with the basis values ℓ_j(ρ²) and the
    // measure ω t₀ d ρ^{d-1} dρ folded into `basis_weights[j][g]`.
    rho: Vec<f64>,
    basis_weights: Vec<Vec<f64>>,
}

impl OriginBall {
    pub(crate) fn new(backend: &FieldBackend, t_nodes: &[f64]) -> Self {
        let degree = BALL_DEGREE.min(t_nodes.len().saturating_sub(1));
        let t0 = t_nodes[0];
        let q0 = backend.q_of_module(t0);
        let s: Vec<f64> = t_nodes[..=degree]
            .iter()
            .map(|&t| backend.q_of_module(t) / q0)
            .collect();
        let coeffs: Vec<Vec<f64>> = (0..=degree).map(|j| lagrange_coeffs(&s, j)).collect();
        let (rho, gw) = gauss_legendre_unit(BALL_GAUSS_NODES);
        let d = backend.euclidean_dim as f64;
        let basis_weights = coeffs
            .iter()
            .map(|c| {
                rho.iter()
                    .zip(&gw)
                    .map(|(&r, &w)| {
                        let ell = horner(c, r * r);
                        backend.omega * t0 * d * r.powf(d - 1.0) * w * ell
                    })
                    .collect()
            })
            .collect();
        OriginBall {
            t0,
            omega: backend.omega,
            dim: backend.euclidean_dim,
            coeffs,
            rho,
            basis_weights,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Weights `c_j` with `∫_{m<t₀} (a + b·log m(x)) φ(x) dx ≈ Σ_j c_j φ_j`.
    pub fn log_moment_weights(&self, a: f64, b: f64) -> Vec<f64> {
        let lt0 = self.t0.ln();
        self.coeffs
            .iter()
            .map(|c| {
                let mut acc = 0.0;
                for (k, &ck) in c.iter().enumerate() {
                    // t^α with α = 2k/d; q₀^{-k} t₀^{α} = 1.
                    let p = 2.0 * k as f64 / self.dim as f64 + 1.0;
                    acc += ck * (a / p + b * (lt0 / p - 1.0 / (p * p)));
                }
                self.omega * self.t0 * acc
            })
            .collect()
    }

    /// Weights for `∫_{m<t₀} φ(x) dx`.
    pub fn weights(&self) -> Vec<f64> {
        self.log_moment_weights(1.0, 0.0)
    }

    /// Weights for `∫_{m<t₀} k(m(x)) φ(x) dx` with a radial kernel profile `k`.
    pub fn kernel_weights(&self, mut k: impl FnMut(f64) -> f64) -> Vec<f64> {
        let kv: Vec<f64> = self
            .rho
            .iter()
            .map(|&r| k(self.t0 * r.powi(self.dim as i32)))
            .collect();
        self.basis_weights
            .iter()
            .map(|bw| bw.iter().zip(&kv).map(|(w, k)| w * k).sum())
            .collect()
    }

    /// Gauss nodes `ρ ∈ [0,1]` (radius `r₀ρ`) with the Lagrange basis values
    /// `ℓ_j(ρ²)` and plain Gauss weights, for callers building their own
    /// one-dimensional ball integrals.
    pub(crate) fn radial_rule(&self) -> (Vec<f64>, Vec<f64>, Vec<Vec<f64>>) {
        let (rho, gw) = gauss_legendre_unit(BALL_GAUSS_NODES);
        let basis = self
            .coeffs
            .iter()
            .map(|c| rho.iter().map(|&r| horner(c, r * r)).collect())
            .collect();
        (rho, gw, basis)
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
}

/// Monomial coefficients of the j-th Lagrange basis polynomial on `nodes`.
fn lagrange_coeffs(nodes: &[f64], j: usize) -> Vec<f64> {
    let mut poly = vec![1.0];
    let mut denom = 1.0;
    for (m, &xm) in nodes.iter().enumerate() {
        if m == j {
            continue;
        }
        let mut next = vec![0.0; poly.len() + 1];
        for (k, &pk) in poly.iter().enumerate() {
            next[k] -= xm * pk;
            next[k + 1] += pk;
        }
        poly = next;
        denom *= nodes[j] - xm;
    }
    poly.iter().map(|p| p / denom).collect()
}

/// Symmetric log-uniform grid for radial functions on one field.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    backend: FieldBackend,
    log_t: Vec<f64>,
    t: Vec<f64>,
    step: f64,
    w_mult: Vec<f64>,
    w_add: Vec<f64>,
    ball: OriginBall,
}

impl RadialGrid {
    /// Uniform `log t` from `-L` to `L` with `n` (even) nodes.
    pub fn new(backend: FieldBackend, half_range: f64, n: usize) -> Result<Self> {
        if !(half_range > 0.0) || !half_range.is_finite() {
            return Err(Error::Domain(alloc::format!(
                "grid half range must be positive, got {half_range}"
            )));
        }
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::Domain(alloc::format!(
                "grid size must be even and at least 2, got {n}"
            )));
        }
        Ok(Self::with_step(backend, 2.0 * half_range / (n - 1) as f64, n))
    }

    /// Like [`RadialGrid::new`], but with the step snapped so that
    /// `log(anchor)` is an integer multiple of it (the half range moves by at
    /// most half a step per node count). Powers of `anchor` then sit exactly
    /// between grid nodes, which makes cutoffs at those values exact on cells.
    pub fn aligned(backend: FieldBackend, half_range: f64, n: usize, anchor: f64) -> Result<Self> {
        let probe = Self::new(backend, half_range, n)?;
        if !(anchor > 1.0) {
            return Err(Error::Domain(alloc::format!(
                "alignment anchor must exceed 1, got {anchor}"
            )));
        }
        let la = anchor.ln();
        let m = (la / probe.step).round().max(1.0);
        Ok(Self::with_step(backend, la / m, n))
    }

    /// Symmetric grid of `count` nodes (any parity) at spacing `step`.
    pub(crate) fn with_step(backend: FieldBackend, step: f64, count: usize) -> Self {
        let mid = (count as f64 - 1.0) / 2.0;
        let log_t: Vec<f64> = (0..count).map(|i| (i as f64 - mid) * step).collect();
        let t: Vec<f64> = log_t.iter().map(|u| u.exp()).collect();
        let w_mult = gregory_weights(count, step);
        let w_add = t
            .iter()
            .zip(&w_mult)
            .map(|(t, w)| backend.omega * t * w)
            .collect();
        let ball = OriginBall::new(&backend, &t);
        RadialGrid {
            backend,
            log_t,
            t,
            step,
            w_mult,
            w_add,
            ball,
        }
    }

    /// Grid holding all products `t_i·t_j` (`2n − 1` nodes, same step).
    pub fn product_grid(&self) -> RadialGrid {
        Self::with_step(self.backend, self.step, 2 * self.len() - 1)
    }

    pub fn backend(&self) -> &FieldBackend {
        &self.backend
    }
    pub fn len(&self) -> usize {
        self.t.len()
    }
    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
    pub fn step(&self) -> f64 {
        self.step
    }
    pub fn half_range(&self) -> f64 {
        self.log_t[self.len() - 1]
    }
    pub fn log_t(&self) -> &[f64] {
        &self.log_t
    }
    pub fn t(&self) -> &[f64] {
        &self.t
    }
    pub fn t_max(&self) -> f64 {
        self.t[self.len() - 1]
    }
    pub fn t_min(&self) -> f64 {
        self.t[0]
    }
    pub fn w_mult(&self) -> &[f64] {
        &self.w_mult
    }
    pub fn w_add(&self) -> &[f64] {
        &self.w_add
    }
    pub fn weights(&self, picture: Picture) -> &[f64] {
        match picture {
            Picture::Additive => &self.w_add,
            Picture::Multiplicative => &self.w_mult,
        }
    }
    pub fn origin_ball(&self) -> &OriginBall {
        &self.ball
    }

    /// Index of `t ↦ 1/t`.
    pub fn reversal(&self, i: usize) -> usize {
        self.len() - 1 - i
    }

    /// Whether `log t` values are an exact grid-step shift of the nodes,
    /// i.e. whether `s / step` is an integer up to rounding.
    pub fn lattice_steps(&self, shift: f64) -> Option<i64> {
        let k = shift / self.step;
        let r = k.round();
        ((k - r).abs() < 1e-9).then_some(r as i64)
    }

    /// Number of nodes with `t ≤ bound` (closed cutoff).
    pub fn count_at_most(&self, bound: f64) -> usize {
        if !(bound > 0.0) {
            return 0;
        }
        let lb = bound.ln();
        // Tolerate rounding for bounds that sit exactly on a node.
        let eps = 1e-9 * self.step;
        self.log_t.iter().take_while(|&&u| u <= lb + eps).count()
    }

    /// Index of the node whose `log t` equals `u`, if any.
    pub fn index_of_log(&self, u: f64) -> Option<usize> {
        let mid = (self.len() as f64 - 1.0) / 2.0;
        let k = u / self.step + mid;
        let r = k.round();
        ((k - r).abs() < 1e-9 && r >= 0.0 && (r as usize) < self.len()).then_some(r as usize)
    }

    /// `∫ φ dx` over the whole field: nodes plus the origin ball.
    pub fn integrate_additive(&self, samples: &[Complex64]) -> Complex64 {
        let mut acc: Complex64 = samples.iter().zip(&self.w_add).map(|(s, w)| s * w).sum();
        for (j, c) in self.ball.weights().iter().enumerate() {
            acc += samples[j] * c;
        }
        acc
    }

    /// `‖φ‖` in `L²(dx)`, including the origin ball.
    pub fn l2_norm_additive(&self, samples: &[Complex64]) -> f64 {
        let sq: Vec<Complex64> = samples
            .iter()
            .map(|z| Complex64::new(z.norm_sqr(), 0.0))
            .collect();
        self.integrate_additive(&sq).re.max(0.0).sqrt()
    }

    pub fn l2_norm(&self, samples: &[Complex64], picture: Picture) -> f64 {
        match picture {
            Picture::Additive => self.l2_norm_additive(samples),
            Picture::Multiplicative => samples
                .iter()
                .zip(&self.w_mult)
                .map(|(z, w)| z.norm_sqr() * w)
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Additive weights with the origin-ball completion folded into the
    /// first nodes. These may be negative and are only meant for sums.
    pub fn completed_additive_weights(&self) -> Vec<f64> {
        let mut w = self.w_add.clone();
        for (j, c) in self.ball.weights().iter().enumerate() {
            w[j] += c;
        }
        w
    }
}

/// Samples of a radial function on a grid.
#[derive(Debug, Clone)]
pub struct RadialFunction {
    pub grid: Arc<RadialGrid>,
    pub samples: Vec<Complex64>,
}

impl RadialFunction {
    pub fn new(grid: Arc<RadialGrid>, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch(alloc::format!(
                "{} samples for a grid of {}",
                samples.len(),
                grid.len()
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("radial function has non-finite samples".into()));
        }
        Ok(RadialFunction { grid, samples })
    }

    pub fn from_fn(grid: Arc<RadialGrid>, mut f: impl FnMut(f64) -> Complex64) -> Self {
        let samples = grid.t().iter().map(|&t| f(t)).collect();
        RadialFunction { grid, samples }
    }

    /// Multiplicative picture to additive: `h_a(t) = h(t) / √(ω t)`.
    pub fn to_additive(&self) -> RadialFunction {
        let omega = self.grid.backend().omega;
        let samples = self
            .samples
            .iter()
            .zip(self.grid.t())
            .map(|(h, &t)| h / (omega * t).sqrt())
            .collect();
        RadialFunction {
            grid: self.grid.clone(),
            samples,
        }
    }

    /// Additive picture to multiplicative: `h(t) = h_a(t) · √(ω t)`.
    pub fn to_multiplicative(&self) -> RadialFunction {
        let omega = self.grid.backend().omega;
        let samples = self
            .samples
            .iter()
            .zip(self.grid.t())
            .map(|(h, &t)| h * (omega * t).sqrt())
            .collect();
        RadialFunction {
            grid: self.grid.clone(),
            samples,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Grid on `ℝ` made of the nodes `±t_k` of a log-uniform lattice.
///
/// Signed index layout: `0..n` holds `−t_{n−1}, …, −t_0` and `n..2n` holds
/// `t_0, …, t_{n−1}`, so `|x| ≤ Λ` is a contiguous middle block.
#[derive(Debug, Clone)]
pub struct SignedGrid {
    step: f64,
    log_t: Vec<f64>,
    t: Vec<f64>,
    w_mult: Vec<f64>,
    x: Vec<f64>,
    weights: Vec<f64>,
    ball: OriginBall,
}

impl SignedGrid {
    /// Mirror of a radial ℝ grid: the same positive nodes and weights.
    pub fn from_radial(grid: &RadialGrid) -> Result<Self> {
        if grid.backend().field_id != crate::field::FieldId::R {
            return Err(Error::Domain("signed grids exist only for the real field".into()));
        }
        Ok(Self::from_log_nodes(grid.step(), grid.log_t().to_vec()))
    }

    /// `n_half` positive nodes at `log t = (k + ½)·step`, the largest one at
    /// or just above `t_max`.
    pub fn aligned(step: f64, t_max: f64, n_half: usize) -> Result<Self> {
        if !(step > 0.0) || !(t_max > 0.0) || n_half < 2 {
            return Err(Error::Domain(alloc::format!(
                "invalid signed grid (step {step}, t_max {t_max}, n_half {n_half})"
            )));
        }
        let k_hi = (t_max.ln() / step - 0.5).ceil() as i64 + 1;
        let k_lo = k_hi - n_half as i64;
        let log_t = (k_lo..k_hi).map(|k| (k as f64 + 0.5) * step).collect();
        Ok(Self::from_log_nodes(step, log_t))
    }

    fn from_log_nodes(step: f64, log_t: Vec<f64>) -> Self {
        let n = log_t.len();
        let t: Vec<f64> = log_t.iter().map(|u: &f64| u.exp()).collect();
        let w_mult = gregory_weights(n, step);
        let mut x = Vec::with_capacity(2 * n);
        let mut weights = Vec::with_capacity(2 * n);
        for i in (0..n).rev() {
            x.push(-t[i]);
            weights.push(t[i] * w_mult[i]);
        }
        for i in 0..n {
            x.push(t[i]);
            weights.push(t[i] * w_mult[i]);
        }
        // Per-sign ball on the half line: ω = 1, d = 1.
        let half_line = FieldBackend {
            omega: 1.0,
            ..FieldBackend::new(crate::field::FieldId::R)
        };
        let ball = OriginBall::new(&half_line, &t);
        SignedGrid {
            step,
            log_t,
            t,
            w_mult,
            x,
            weights,
            ball,
        }
    }

    pub fn step(&self) -> f64 {
        self.step
    }
    pub fn n_half(&self) -> usize {
        self.t.len()
    }
    pub fn len(&self) -> usize {
        self.x.len()
    }
    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
    pub fn x(&self) -> &[f64] {
        &self.x
    }
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
    pub fn log_t(&self) -> &[f64] {
        &self.log_t
    }
    pub fn t(&self) -> &[f64] {
        &self.t
    }
    pub fn w_mult(&self) -> &[f64] {
        &self.w_mult
    }
    pub fn t_max(&self) -> f64 {
        self.t[self.t.len() - 1]
    }
    pub fn origin_ball(&self) -> &OriginBall {
        &self.ball
    }
    pub fn pos_index(&self, k: usize) -> usize {
        self.n_half() + k
    }
    pub fn neg_index(&self, k: usize) -> usize {
        self.n_half() - 1 - k
    }
    /// Index of `−x`.
    pub fn mirror(&self, i: usize) -> usize {
        self.len() - 1 - i
    }

    /// Positive nodes with `t ≤ bound`.
    pub fn count_at_most(&self, bound: f64) -> usize {
        if !(bound > 0.0) {
            return 0;
        }
        let lb = bound.ln() + 1e-9 * self.step;
        self.log_t.iter().take_while(|&&u| u <= lb).count()
    }

    /// Whether a shift in `log t` is an integer number of steps.
    pub fn lattice_steps(&self, shift: f64) -> Option<i64> {
        let k = shift / self.step;
        let r = k.round();
        ((k - r).abs() < 1e-9).then_some(r as i64)
    }

    /// `‖φ‖` in `L²(ℝ, dx)` with the origin interval completed per parity.
    pub fn l2_norm(&self, samples: &[Complex64]) -> f64 {
        let n = self.n_half();
        let mut acc: f64 = samples
            .iter()
            .zip(&self.weights)
            .map(|(z, w)| z.norm_sqr() * w)
            .sum();
        for (j, c) in self.ball.weights().iter().enumerate() {
            acc += c * (samples[n + j].norm_sqr() + samples[n - 1 - j].norm_sqr());
        }
        acc.max(0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldBackend, FieldId};
    use proptest::prelude::*;

    fn g(id: FieldId, l: f64, n: usize) -> RadialGrid {
        RadialGrid::new(FieldBackend::new(id), l, n).unwrap()
    }

    #[test]
    fn small_grid_layout() {
        let l = 10f64.ln();
        let grid = g(FieldId::H, l, 4);
        let expect = [-l, -l / 3.0, l / 3.0, l];
        for (a, b) in grid.log_t().iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(RadialGrid::new(FieldBackend::new(FieldId::R), 1.0, 3).is_err());
        assert!(RadialGrid::new(FieldBackend::new(FieldId::R), 0.0, 4).is_err());
        assert!(RadialGrid::new(FieldBackend::new(FieldId::R), 1.0, 0).is_err());
    }

    #[test]
    fn reversal_is_exact_inversion() {
        let grid = g(FieldId::C, 3.0, 64);
        for i in 0..grid.len() {
            let j = grid.reversal(i);
            assert_eq!(grid.log_t()[i], -grid.log_t()[j]);
            assert_eq!(grid.reversal(j), i);
        }
    }

    #[test]
    fn additive_weights_relation() {
        for id in FieldId::ALL {
            let grid = g(id, 4.0, 128);
            let om = grid.backend().omega;
            for i in 0..grid.len() {
                let expect = om * grid.t()[i] * grid.w_mult()[i];
                assert!((grid.w_add()[i] - expect).abs() <= 1e-15 * expect);
            }
        }
    }

    #[test]
    fn unit_annulus_has_measure_one() {
        let grid = g(FieldId::R, 6.0, 512);
        let s: f64 = grid
            .log_t()
            .iter()
            .zip(grid.w_mult())
            .filter(|(u, _)| (0.0..=1.0).contains(*u))
            .map(|(_, w)| w)
            .sum();
        assert!((s - 1.0).abs() <= grid.step());
    }

    #[test]
    fn aligned_grid_puts_powers_of_anchor_on_the_product_lattice() {
        let b = FieldBackend::new(FieldId::R);
        let grid = RadialGrid::aligned(b, 1e4f64.ln(), 2048, 2.0).unwrap();
        let m = 2f64.ln() / grid.step();
        assert!((m - m.round()).abs() < 1e-9);
        assert!((grid.half_range() - 1e4f64.ln()).abs() < grid.step());
        let pg = grid.product_grid();
        for k in 1..6 {
            assert!(pg.index_of_log(k as f64 * 2f64.ln()).is_some());
            assert!(grid.index_of_log(k as f64 * 2f64.ln()).is_none());
        }
        assert_eq!(pg.log_t()[grid.len() - 1], 0.0);
    }

    #[test]
    fn ball_integrates_radial_polynomials_exactly() {
        for id in FieldId::ALL {
            let grid = g(id, 5.0, 200);
            let b = grid.backend();
            let q0 = b.q_of_module(grid.t_min());
            let w = grid.origin_ball().weights();
            for k in 0..=3 {
                let samples: Vec<f64> = grid.t()[..4]
                    .iter()
                    .map(|&t| (b.q_of_module(t) / q0).powi(k))
                    .collect();
                let approx: f64 = w.iter().zip(&samples).map(|(c, s)| c * s).sum();
                let p = 2.0 * k as f64 / b.euclidean_dim as f64 + 1.0;
                let exact = b.omega * grid.t_min() / p;
                assert!((approx - exact).abs() < 1e-9 * exact, "{id} k={k}");
            }
        }
    }

    #[test]
    fn gaussian_mass_with_ball() {
        // ∫ e^{-π a q} dx over ℝ^d with the self-dual measure is a^{-d/2}.
        for id in FieldId::ALL {
            let grid = g(id, 1e4f64.ln(), 1024);
            let b = *grid.backend();
            let c = if id == FieldId::R { 1.0 } else { 2.0 };
            let s: Vec<Complex64> = grid
                .t()
                .iter()
                .map(|&t| Complex64::new((-core::f64::consts::PI * c * b.q_of_module(t)).exp(), 0.0))
                .collect();
            let m = grid.integrate_additive(&s).re;
            assert!((m - 1.0).abs() < 1e-7, "{id}: {m}");
        }
    }

    #[test]
    fn signed_grid_layout() {
        let sg = SignedGrid::aligned(2f64.ln() / 20.0, 50.0, 300).unwrap();
        assert!(sg.t_max() >= 50.0);
        assert_eq!(sg.len(), 600);
        for i in 0..sg.len() {
            assert_eq!(sg.x()[i], -sg.x()[sg.mirror(i)]);
        }
        let m = 2f64.ln() / sg.step();
        for &u in sg.log_t() {
            let k = u / sg.step() - 0.5;
            assert!((k - k.round()).abs() < 1e-9);
        }
        assert!((m - 20.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn additive_round_trip(re in proptest::collection::vec(-5.0f64..5.0, 16), im in proptest::collection::vec(-5.0f64..5.0, 16)) {
            let grid = Arc::new(g(FieldId::H, 2.0, 16));
            let s: Vec<Complex64> = re.iter().zip(&im).map(|(a, b)| Complex64::new(*a, *b)).collect();
            let h = RadialFunction::new(grid.clone(), s.clone()).unwrap();
            let back = h.to_additive().to_multiplicative();
            for (a, b) in back.samples.iter().zip(&s) {
                prop_assert!((a - b).norm() <= 4.0 * f64::EPSILON * b.norm());
            }
            let na = grid.l2_norm(&h.samples, Picture::Multiplicative);
            let add = h.to_additive();
            let nb: f64 = add.samples.iter().zip(grid.w_add()).map(|(z, w)| z.norm_sqr() * w).sum::<f64>().sqrt();
            prop_assert!((na - nb).abs() <= 1e-12 * na.max(1e-300));
        }
    }
}

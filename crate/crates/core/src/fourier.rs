//! The additive Fourier transform on radial functions, and the full signed
//! transform on ℝ.
//!
//! `(Fφ)(t_i) = Σ_j K(t_i t_j) τ(t_i t_j) φ_j w_add[j] + (origin ball)`, where
//! `τ` is the taper from [`CharacterKernel::taper`]. Because `K` only sees the
//! product of modules, the dense matrix is never needed for applying `F`: one
//! profile over the product grid suffices.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::field::{FieldBackend, FieldId};
use crate::grid::{RadialGrid, SignedGrid};
use crate::kernel::CharacterKernel;
use crate::linalg::CMatrix;
use crate::operator::{KernelOperator, Picture};

/// Scale parameters of the Gaussian probes `exp(−c π a q)`.
pub const PROBE_SCALES: [f64; 3] = [0.5, 1.0, 2.0];

/// Acceptance gates for a quadrature Fourier matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierGate {
    /// Largest accepted unitarity defect.
    pub defect_threshold: f64,
    /// Smallest accepted resolved product (see [`CharacterKernel::resolved_product`]).
    pub min_resolved_product: f64,
}

impl FourierGate {
    pub fn for_field(id: FieldId) -> Self {
        FourierGate {
            defect_threshold: match id {
                FieldId::R => 1e-6,
                FieldId::C | FieldId::H => 1e-3,
            },
            min_resolved_product: 16.0,
        }
    }

    /// Gate that accepts any grid; the defect is still measured.
    pub fn permissive() -> Self {
        FourierGate {
            defect_threshold: f64::INFINITY,
            min_resolved_product: 0.0,
        }
    }
}

/// Gaussian scale `c` for which `exp(−cπ q)` is its own transform.
pub fn gaussian_scale(id: FieldId) -> f64 {
    match id {
        FieldId::R => 1.0,
        FieldId::C | FieldId::H => 2.0,
    }
}

/// `exp(−c π a q)` sampled on the grid, `q = t^{2/d}`.
pub fn gaussian_probe(grid: &RadialGrid, a: f64) -> Vec<Complex64> {
    let b = grid.backend();
    let c = gaussian_scale(b.field_id);
    grid.t()
        .iter()
        .map(|&t| Complex64::new((-c * PI * a * b.q_of_module(t)).exp(), 0.0))
        .collect()
}

/// Errors of `F` on one Gaussian, all relative in `L²(dx)` except `max_abs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeReport {
    pub scale: f64,
    /// `‖Fφ − a^{−d/2} φ_{1/a}‖ / ‖φ‖`.
    pub analytic: f64,
    /// `max |Fφ − a^{−d/2} φ_{1/a}|`.
    pub max_abs: f64,
    /// `‖F²φ − φ‖ / ‖φ‖`.
    pub involution: f64,
    /// `|‖Fφ‖ − ‖φ‖| / ‖φ‖`.
    pub plancherel: f64,
}

#[derive(Debug, Clone)]
pub struct FourierOperator {
    grid: Arc<RadialGrid>,
    kernel: CharacterKernel,
    /// Tapered kernel on the product lattice: `profile[i + j] = Kτ(t_i t_j)`.
    profile: Vec<f64>,
    /// `ball[i][k]`: origin-ball weight of sample `k` in row `i`.
    ball: Vec<Vec<f64>>,
    probes: Vec<ProbeReport>,
    unitarity_defect: f64,
}

/// `build_fourier` with the default gate of the field.
pub fn build_fourier(backend: &FieldBackend, grid: Arc<RadialGrid>) -> Result<FourierOperator> {
    if grid.backend() != backend {
        return Err(Error::GridMismatch(alloc::format!(
            "grid built for {} used with {}",
            grid.backend().field_id,
            backend.field_id
        )));
    }
    FourierOperator::build(grid, FourierGate::for_field(backend.field_id))
}

impl FourierOperator {
    pub fn build(grid: Arc<RadialGrid>, gate: FourierGate) -> Result<Self> {
        let kernel = CharacterKernel::new(*grid.backend());
        let h = grid.step();
        let resolved = kernel.resolved_product(h);
        if resolved < gate.min_resolved_product {
            return Err(Error::Undersampled {
                resolved_product: resolved,
                required: gate.min_resolved_product,
            });
        }
        let pg = grid.product_grid();
        let profile = pg.t().iter().map(|&u| kernel.eval_tapered(u, h)).collect();
        let ball = ball_rows(&grid, &kernel, grid.t());
        let mut op = FourierOperator {
            grid,
            kernel,
            profile,
            ball,
            probes: Vec::new(),
            unitarity_defect: 0.0,
        };
        op.probes = PROBE_SCALES.iter().map(|&a| op.probe(a)).collect();
        op.unitarity_defect = op
            .probes
            .iter()
            .map(|p| p.involution.max(p.plancherel))
            .fold(0.0, f64::max);
        if !(op.unitarity_defect <= gate.defect_threshold) {
            return Err(Error::FourierDefect {
                defect: op.unitarity_defect,
                threshold: gate.defect_threshold,
            });
        }
        Ok(op)
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }
    pub fn kernel(&self) -> &CharacterKernel {
        &self.kernel
    }
    pub fn unitarity_defect(&self) -> f64 {
        self.unitarity_defect
    }
    pub fn probes(&self) -> &[ProbeReport] {
        &self.probes
    }

    /// Tapered kernel value `Kτ(t_i t_j)` (the matrix entry without weights).
    pub fn kernel_value(&self, i: usize, j: usize) -> f64 {
        self.profile[i + j]
    }

    /// Matrix entry: kernel times additive weight, plus the ball term.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let mut v = self.profile[i + j] * self.grid.w_add()[j];
        if let Some(b) = self.ball[i].get(j) {
            v += b;
        }
        v
    }

    /// Dense matrix against `dx` (`n × n`).
    pub fn matrix(&self) -> CMatrix {
        let n = self.grid.len();
        CMatrix::from_fn(n, n, |i, j| Complex64::new(self.entry(i, j), 0.0))
    }

    /// `F` as an additive-picture operator.
    pub fn to_operator(&self) -> KernelOperator {
        KernelOperator::from_matrix(self.grid.clone(), Picture::Additive, self.matrix())
            .expect("square matrix on its own grid")
    }

    pub fn apply(&self, phi: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.len();
        let w = self.grid.w_add();
        let pw: Vec<Complex64> = phi.iter().zip(w).map(|(p, w)| p * w).collect();
        (0..n)
            .map(|i| {
                let row = &self.profile[i..i + n];
                let mut acc: Complex64 = row.iter().zip(&pw).map(|(k, p)| p * k).sum();
                for (b, p) in self.ball[i].iter().zip(phi) {
                    acc += p * b;
                }
                acc
            })
            .collect()
    }

    /// `(Fφ)(s)` at arbitrary modules `s` (e.g. the product grid).
    pub fn transform_onto(&self, phi: &[Complex64], targets: &[f64]) -> Vec<Complex64> {
        let h = self.grid.step();
        let pw: Vec<Complex64> = phi
            .iter()
            .zip(self.grid.w_add())
            .map(|(p, w)| p * w)
            .collect();
        let ball = ball_rows(&self.grid, &self.kernel, targets);
        targets
            .iter()
            .zip(&ball)
            .map(|(&s, b)| {
                let mut acc: Complex64 = self
                    .grid
                    .t()
                    .iter()
                    .zip(&pw)
                    .map(|(&t, p)| p * self.kernel.eval_tapered(s * t, h))
                    .sum();
                for (c, p) in b.iter().zip(phi) {
                    acc += p * c;
                }
                acc
            })
            .collect()
    }

    /// Errors on the Gaussian `exp(−cπ a q)`, whose transform is
    /// `a^{−d/2} exp(−cπ q / a)`.
    pub fn probe(&self, a: f64) -> ProbeReport {
        let g = &self.grid;
        let d = g.backend().euclidean_dim as f64;
        let phi = gaussian_probe(g, a);
        let expect: Vec<Complex64> = gaussian_probe(g, 1.0 / a)
            .into_iter()
            .map(|z| z * a.powf(-d / 2.0))
            .collect();
        let f1 = self.apply(&phi);
        let f2 = self.apply(&f1);
        let norm = g.l2_norm_additive(&phi);
        let diff = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
            x.iter().zip(y).map(|(a, b)| a - b).collect()
        };
        let e1 = diff(&f1, &expect);
        ProbeReport {
            scale: a,
            analytic: g.l2_norm_additive(&e1) / norm,
            max_abs: e1.iter().map(|z| z.norm()).fold(0.0, f64::max),
            involution: g.l2_norm_additive(&diff(&f2, &phi)) / norm,
            plancherel: (g.l2_norm_additive(&f1) - norm).abs() / norm,
        }
    }
}

/// Origin-ball weights of the first samples for each output module.
fn ball_rows(grid: &RadialGrid, kernel: &CharacterKernel, targets: &[f64]) -> Vec<Vec<f64>> {
    let ball = grid.origin_ball();
    targets
        .iter()
        .map(|&s| ball.kernel_weights(|u| kernel.eval(s * u)))
        .collect()
}

/// `F` or `F⁻¹` on the whole real line, sampled on a [`SignedGrid`].
///
/// Entries are `e^{σ 2πi x y} τ(|xy|) w(y)` with `σ = −1` for `F` and `+1`
/// for `F⁻¹`; the interval `|y| < t₀` is completed per parity.
#[derive(Debug, Clone)]
pub struct FullLineFourier {
    grid: Arc<SignedGrid>,
    sign: f64,
    kernel: CharacterKernel,
    /// `ball[i]`: weights of the samples at `+t_k` then `−t_k`, `k ≤ degree`.
    ball: Vec<Vec<Complex64>>,
}

impl FullLineFourier {
    pub fn forward(grid: Arc<SignedGrid>) -> Self {
        Self::new(grid, -1.0)
    }

    pub fn inverse(grid: Arc<SignedGrid>) -> Self {
        Self::new(grid, 1.0)
    }

    fn new(grid: Arc<SignedGrid>, sign: f64) -> Self {
        let kernel = CharacterKernel::new(FieldBackend::new(FieldId::R));
        let ball = grid
            .x()
            .iter()
            .map(|&xi| signed_ball_row(&grid, xi, sign))
            .collect();
        FullLineFourier {
            grid,
            sign,
            kernel,
            ball,
        }
    }

    pub fn grid(&self) -> &Arc<SignedGrid> {
        &self.grid
    }
    pub fn sign(&self) -> f64 {
        self.sign
    }
    pub fn len(&self) -> usize {
        self.grid.len()
    }
    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Matrix entry `(i, j)` against `dx`.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        let g = &self.grid;
        let xy = g.x()[i] * g.x()[j];
        let (s, c) = (self.sign * 2.0 * PI * xy).sin_cos();
        let mut v = Complex64::new(c, s) * (self.kernel.taper(xy.abs(), g.step()) * g.weights()[j]);
        let n = g.n_half();
        let deg1 = self.ball[i].len() / 2;
        if j >= n && j - n < deg1 {
            v += self.ball[i][j - n];
        } else if j < n && n - 1 - j < deg1 {
            v += self.ball[i][deg1 + n - 1 - j];
        }
        v
    }

    /// Column `j` written into `out`.
    pub fn column_into(&self, j: usize, out: &mut [Complex64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.entry(i, j);
        }
    }

    pub fn matrix(&self) -> CMatrix {
        let n = self.len();
        CMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    pub fn apply(&self, phi: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j) * phi[j]).sum())
            .collect()
    }

    /// Largest of the involution and Plancherel errors of `F` over even
    /// Gaussians and the odd Hermite function.
    pub fn defect(&self) -> f64 {
        let inv = FullLineFourier::new(self.grid.clone(), -self.sign);
        let mut worst: f64 = 0.0;
        for phi in self.probe_family() {
            let norm = self.grid.l2_norm(&phi);
            let f1 = self.apply(&phi);
            let back = inv.apply(&f1);
            let e: Vec<Complex64> = back.iter().zip(&phi).map(|(a, b)| a - b).collect();
            worst = worst
                .max(self.grid.l2_norm(&e) / norm)
                .max((self.grid.l2_norm(&f1) - norm).abs() / norm);
        }
        worst
    }

    fn probe_family(&self) -> Vec<Vec<Complex64>> {
        let x = self.grid.x();
        let mut out: Vec<Vec<Complex64>> = PROBE_SCALES
            .iter()
            .map(|&a| x.iter().map(|&x| Complex64::new((-PI * a * x * x).exp(), 0.0)).collect())
            .collect();
        out.push(hermite_odd(x));
        out
    }

    /// `‖Fψ − σi ψ‖ / ‖ψ‖` for `ψ = x e^{−πx²}` (eigenvalue `−i` for `F`).
    pub fn hermite_eigen_error(&self) -> f64 {
        let psi = hermite_odd(self.grid.x());
        let f = self.apply(&psi);
        let lam = Complex64::new(0.0, self.sign);
        let e: Vec<Complex64> = f.iter().zip(&psi).map(|(a, b)| a - lam * b).collect();
        self.grid.l2_norm(&e) / self.grid.l2_norm(&psi)
    }

    /// Dense operator on the signed grid.
    pub fn to_operator(&self) -> KernelOperator {
        KernelOperator::from_signed_matrix(self.grid.clone(), self.matrix())
            .expect("square matrix on its own grid")
    }
}

pub fn hermite_odd(x: &[f64]) -> Vec<Complex64> {
    x.iter()
        .map(|&x| Complex64::new(x * (-PI * x * x).exp(), 0.0))
        .collect()
}

/// Ball weights for `∫_{|y|<t₀} e^{σ2πi ξ y} φ(y) dy`, splitting `φ` into
/// `e(y) = Σ e_k ℓ_k(y²)` and `o(y) = y Σ (o_k/t_k) ℓ_k(y²)`.
fn signed_ball_row(grid: &SignedGrid, xi: f64, sign: f64) -> Vec<Complex64> {
    let ball = grid.origin_ball();
    let (rho, gw, basis) = ball.radial_rule();
    let r0 = ball.t0;
    let deg1 = basis.len();
    let mut row = vec![Complex64::new(0.0, 0.0); 2 * deg1];
    for k in 0..deg1 {
        let (mut ie, mut io) = (0.0, 0.0);
        for g in 0..rho.len() {
            let r = r0 * rho[g];
            let w = r0 * gw[g] * basis[k][g];
            let (s, c) = (2.0 * PI * xi * r).sin_cos();
            ie += 2.0 * c * w;
            io += 2.0 * s * r / grid.t()[k] * w;
        }
        let odd = Complex64::new(0.0, sign) * (0.5 * io);
        row[k] = Complex64::new(0.5 * ie, 0.0) + odd;
        row[deg1 + k] = Complex64::new(0.5 * ie, 0.0) - odd;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(id: FieldId, l: f64, n: usize) -> FourierOperator {
        let grid = Arc::new(RadialGrid::new(FieldBackend::new(id), l, n).unwrap());
        FourierOperator::build(grid, FourierGate::permissive()).unwrap()
    }

    #[test]
    fn real_gaussian_is_fixed() {
        let f = op(FieldId::R, 1e4f64.ln(), 2048);
        let p = f.probe(1.0);
        assert!(p.max_abs < 1e-6, "{p:?}");
        assert!(f.unitarity_defect() < 1e-6, "{}", f.unitarity_defect());
    }

    #[test]
    fn quaternion_gaussian_is_fixed() {
        let f = op(FieldId::H, 1e4f64.ln(), 1024);
        assert!(f.probe(1.0).analytic < 1e-3);
        assert!(f.unitarity_defect() < 1e-3);
    }

    #[test]
    fn complex_gaussians_scale() {
        let f = op(FieldId::C, 1e4f64.ln(), 1024);
        for p in f.probes() {
            assert!(p.analytic < 1e-5, "{p:?}");
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let grid = Arc::new(RadialGrid::new(FieldBackend::new(FieldId::R), 1e4f64.ln(), 256).unwrap());
        let e = build_fourier(&FieldBackend::new(FieldId::R), grid).unwrap_err();
        assert!(matches!(e, Error::Undersampled { .. }));
        let grid = Arc::new(RadialGrid::new(FieldBackend::new(FieldId::R), 3.0, 64).unwrap());
        let gate = FourierGate {
            defect_threshold: 1e-12,
            min_resolved_product: 0.0,
        };
        let e = FourierOperator::build(grid, gate).unwrap_err();
        assert!(matches!(e, Error::FourierDefect { .. }));
    }

    #[test]
    fn backend_mismatch_is_rejected() {
        let grid = Arc::new(RadialGrid::new(FieldBackend::new(FieldId::H), 3.0, 64).unwrap());
        assert!(build_fourier(&FieldBackend::new(FieldId::C), grid).is_err());
    }

    #[test]
    fn product_dependence_is_exact() {
        let f = op(FieldId::C, 5.0, 256);
        let w = f.grid().w_add();
        let m = f.matrix();
        for (i, j, k) in [(10, 100, 40), (200, 7, 150), (33, 33, 60)] {
            let l = i + j - k;
            assert_eq!(f.kernel_value(i, j), f.kernel_value(k, l));
            let a = m[(i, j)].re / w[j];
            let b = m[(k, l)].re / w[l];
            assert!((a - b).abs() <= 4.0 * f64::EPSILON * a.abs());
        }
    }

    #[test]
    fn apply_matches_dense_matrix_and_is_linear() {
        let f = op(FieldId::H, 4.0, 128);
        let a: Vec<Complex64> = (0..128).map(|i| Complex64::new((i as f64 * 0.1).sin(), 0.3)).collect();
        let b: Vec<Complex64> = (0..128).map(|i| Complex64::new(1.0 / (1.0 + i as f64), -0.2)).collect();
        let dense = f.matrix() * nalgebra::DVector::from_column_slice(&a);
        let fast = f.apply(&a);
        for (x, y) in dense.iter().zip(&fast) {
            assert!((x - y).norm() < 1e-12 * (1.0 + y.norm()));
        }
        let (al, be) = (Complex64::new(2.0, -1.0), Complex64::new(0.5, 3.0));
        let mix: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| al * x + be * y).collect();
        let fa = f.apply(&a);
        let fb = f.apply(&b);
        for (i, z) in f.apply(&mix).iter().enumerate() {
            assert!((z - (al * fa[i] + be * fb[i])).norm() < 1e-12 * (1.0 + z.norm()));
        }
    }

    #[test]
    fn real_profiles_stay_real() {
        let f = op(FieldId::C, 4.0, 128);
        let a: Vec<Complex64> = (0..128).map(|i| Complex64::new((i as f64).cos(), 0.0)).collect();
        assert!(f.apply(&a).iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn transform_onto_nodes_matches_apply() {
        let f = op(FieldId::R, 3.0, 200);
        let phi = gaussian_probe(f.grid(), 1.3);
        let a = f.apply(&phi);
        let b = f.transform_onto(&phi, f.grid().t());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    fn signed(n_half: usize) -> Arc<SignedGrid> {
        Arc::new(SignedGrid::aligned(2f64.ln() / 40.0, 12.0, n_half).unwrap())
    }

    #[test]
    fn full_line_sectors() {
        let sg = signed(400);
        let f = FullLineFourier::forward(sg.clone());
        assert!(f.hermite_eigen_error() < 1e-5, "{}", f.hermite_eigen_error());
        assert!(f.defect() < 1e-5, "{}", f.defect());
    }

    #[test]
    fn even_input_matches_radial_transform() {
        let rg = Arc::new(RadialGrid::new(FieldBackend::new(FieldId::R), 3.0, 300).unwrap());
        let fr = FourierOperator::build(rg.clone(), FourierGate::permissive()).unwrap();
        let sg = Arc::new(SignedGrid::from_radial(&rg).unwrap());
        let f = FullLineFourier::forward(sg.clone());
        let half: Vec<Complex64> = rg.t().iter().map(|&t| Complex64::new((-PI * 1.7 * t * t).exp() * (1.0 + t), 0.0)).collect();
        let mut phi = vec![Complex64::new(0.0, 0.0); sg.len()];
        for (k, v) in half.iter().enumerate() {
            phi[sg.pos_index(k)] = *v;
            phi[sg.neg_index(k)] = *v;
        }
        let radial = fr.apply(&half);
        let full = f.apply(&phi);
        for k in 0..rg.len() {
            let a = full[sg.pos_index(k)];
            assert!((a - radial[k]).norm() < 1e-12, "{k}: {a} vs {}", radial[k]);
            assert!((full[sg.neg_index(k)] - a).norm() < 1e-12);
        }
    }

    #[test]
    fn full_line_order_four() {
        let sg = signed(200);
        let f = FullLineFourier::forward(sg.clone());
        let psi: Vec<Complex64> = sg.x().iter().map(|&x| Complex64::new((1.0 + x) * (-PI * x * x).exp(), 0.0)).collect();
        let mut v = psi.clone();
        for _ in 0..4 {
            v = f.apply(&v);
        }
        let e: Vec<Complex64> = v.iter().zip(&psi).map(|(a, b)| a - b).collect();
        assert!(sg.l2_norm(&e) / sg.l2_norm(&psi) < 4.0 * f.defect().max(1e-9) + 1e-8);
    }
}

//! Dense integral operators on grids.
//!
//! A [`KernelOperator`] stores `k(x_i, y_j)·w_j`, so composition and action
//! are plain matrix products while traces and Hilbert–Schmidt pairings divide
//! the weights back out.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{RadialGrid, SignedGrid};
use crate::linalg::{singular_values_desc, CMatrix};
use crate::test_function::TestFunction;

/// Which measure the operator acts against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Picture {
    /// `dx`.
    Additive,
    /// `d*x = dx / (ω m(x))`.
    Multiplicative,
}

#[derive(Debug, Clone)]
pub enum Domain {
    Radial(Arc<RadialGrid>),
    /// Signed ℝ grid, always additive.
    Signed(Arc<SignedGrid>),
}

impl Domain {
    pub fn len(&self) -> usize {
        match self {
            Domain::Radial(g) => g.len(),
            Domain::Signed(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn weights(&self, picture: Picture) -> &[f64] {
        match self {
            Domain::Radial(g) => g.weights(picture),
            Domain::Signed(g) => g.weights(),
        }
    }

    fn same_as(&self, other: &Domain) -> bool {
        match (self, other) {
            (Domain::Radial(a), Domain::Radial(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.len() == b.len()
                        && a.step() == b.step()
                        && a.backend() == b.backend())
            }
            (Domain::Signed(a), Domain::Signed(b)) => {
                Arc::ptr_eq(a, b) || (a.len() == b.len() && a.x() == b.x())
            }
            _ => false,
        }
    }
}

/// Where a cutoff falls relative to the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffRange {
    Inside,
    /// `Λ ≥ t_max`: the projection is the identity.
    CoversGrid,
    /// `Λ < t_min`: the projection is zero.
    BelowGrid,
}

#[derive(Debug, Clone)]
pub struct KernelOperator {
    domain: Domain,
    picture: Picture,
    matrix: CMatrix,
}

impl KernelOperator {
    pub fn from_matrix(grid: Arc<RadialGrid>, picture: Picture, matrix: CMatrix) -> Result<Self> {
        Self::with_domain(Domain::Radial(grid), picture, matrix)
    }

    pub fn from_signed_matrix(grid: Arc<SignedGrid>, matrix: CMatrix) -> Result<Self> {
        Self::with_domain(Domain::Signed(grid), Picture::Additive, matrix)
    }

    pub fn with_domain(domain: Domain, picture: Picture, matrix: CMatrix) -> Result<Self> {
        let n = domain.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::GridMismatch(alloc::format!(
                "{}x{} matrix on a grid of {n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("operator has non-finite entries".into()));
        }
        if matches!(domain, Domain::Signed(_)) && picture != Picture::Additive {
            return Err(Error::Domain("signed grids only carry the additive picture".into()));
        }
        Ok(KernelOperator {
            domain,
            picture,
            matrix,
        })
    }

    /// Operator with kernel `k(i, j)`: the matrix is `k(i, j)·w_j`.
    pub fn from_kernel(
        domain: Domain,
        picture: Picture,
        mut k: impl FnMut(usize, usize) -> Complex64,
    ) -> Self {
        let n = domain.len();
        let w = domain.weights(picture).to_vec();
        let matrix = CMatrix::from_fn(n, n, |i, j| k(i, j) * w[j]);
        KernelOperator {
            domain,
            picture,
            matrix,
        }
    }

    pub fn identity(domain: Domain, picture: Picture) -> Self {
        let n = domain.len();
        KernelOperator {
            domain,
            picture,
            matrix: CMatrix::identity(n, n),
        }
    }

    /// `φ ⊗ ψ̄`: `f ↦ ⟨ψ, f⟩ φ`.
    pub fn rank_one(domain: Domain, picture: Picture, phi: &[Complex64], psi: &[Complex64]) -> Self {
        Self::from_kernel(domain, picture, |i, j| phi[i] * psi[j].conj())
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }
    pub fn picture(&self) -> Picture {
        self.picture
    }
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
    pub fn len(&self) -> usize {
        self.matrix.nrows()
    }
    pub fn is_empty(&self) -> bool {
        self.matrix.nrows() == 0
    }
    pub fn weights(&self) -> &[f64] {
        self.domain.weights(self.picture)
    }

    /// Kernel value `k(x_i, y_j)`.
    pub fn kernel_value(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)] / self.weights()[j]
    }

    fn check_same(&self, other: &KernelOperator) -> Result<()> {
        if self.picture != other.picture || !self.domain.same_as(&other.domain) {
            return Err(Error::GridMismatch(alloc::format!(
                "operators on different grids or pictures ({:?} vs {:?})",
                self.picture,
                other.picture
            )));
        }
        Ok(())
    }

    pub fn apply(&self, phi: &[Complex64]) -> Vec<Complex64> {
        (&self.matrix * nalgebra::DVector::from_column_slice(phi))
            .iter()
            .copied()
            .collect()
    }

    /// `A ∘ B`.
    pub fn compose(&self, other: &KernelOperator) -> Result<KernelOperator> {
        self.check_same(other)?;
        Ok(KernelOperator {
            domain: self.domain.clone(),
            picture: self.picture,
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Adjoint for `⟨φ, ψ⟩ = Σ w φ̄ ψ`: `A*_{ij} = conj(A_{ji}) w_j / w_i`.
    pub fn adjoint(&self) -> KernelOperator {
        let w = self.weights();
        let n = self.len();
        let matrix = CMatrix::from_fn(n, n, |i, j| self.matrix[(j, i)].conj() * (w[j] / w[i]));
        KernelOperator {
            domain: self.domain.clone(),
            picture: self.picture,
            matrix,
        }
    }

    /// `Σ_i k(x_i, x_i) w_i`, which is the diagonal sum of the stored matrix.
    pub fn trace(&self) -> Complex64 {
        self.matrix.diagonal().iter().sum()
    }

    /// `Σ_{ij} conj(a_ij) b_ij w_i w_j` on kernel values.
    pub fn hs_inner(&self, other: &KernelOperator) -> Result<Complex64> {
        self.check_same(other)?;
        let w = self.weights();
        let n = self.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            for i in 0..n {
                let a = self.matrix[(i, j)] / w[j];
                let b = other.matrix[(i, j)] / w[j];
                acc += a.conj() * b * (w[i] * w[j]);
            }
        }
        Ok(acc)
    }

    /// Singular values of `W^{1/2} A W^{−1/2}`, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let w = self.weights();
        let n = self.len();
        let sym = CMatrix::from_fn(n, n, |i, j| self.matrix[(i, j)] * (w[i] / w[j]).sqrt());
        singular_values_desc(&sym)
    }

    /// `Σ_{k<m} σ_k` for every `m`.
    pub fn trace_norm_partial_sums(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.singular_values()
            .into_iter()
            .map(|s| {
                acc += s;
                acc
            })
            .collect()
    }

    /// Block of rows and columns in `range`, as a plain matrix.
    pub fn block(&self, range: core::ops::Range<usize>) -> CMatrix {
        let k = range.len();
        self.matrix.view((range.start, range.start), (k, k)).into_owned()
    }
}

pub fn cutoff_range(t_min: f64, t_max: f64, lambda: f64) -> CutoffRange {
    if lambda >= t_max {
        CutoffRange::CoversGrid
    } else if lambda < t_min {
        CutoffRange::BelowGrid
    } else {
        CutoffRange::Inside
    }
}

/// `P_Λ`: 1 exactly on nodes with `t ≤ Λ`.
pub fn cutoff_projection(
    grid: &Arc<RadialGrid>,
    lambda: f64,
    picture: Picture,
) -> Result<(KernelOperator, CutoffRange)> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(alloc::format!("cutoff must be positive, got {lambda}")));
    }
    let n = grid.len();
    let k = grid.count_at_most(lambda);
    let matrix = CMatrix::from_fn(n, n, |i, j| {
        if i == j && i < k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let op = KernelOperator::from_matrix(grid.clone(), picture, matrix)?;
    Ok((op, cutoff_range(grid.t_min(), grid.t_max(), lambda)))
}

/// `P_Λ` on the signed grid: 1 where `|x| ≤ Λ`.
pub fn signed_cutoff_projection(
    grid: &Arc<SignedGrid>,
    lambda: f64,
) -> Result<(KernelOperator, CutoffRange)> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(alloc::format!("cutoff must be positive, got {lambda}")));
    }
    let n = grid.len();
    let k = grid.count_at_most(lambda);
    let (lo, hi) = (grid.n_half() - k, grid.n_half() + k);
    let matrix = CMatrix::from_fn(n, n, |i, j| {
        if i == j && (lo..hi).contains(&i) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let op = KernelOperator::from_signed_matrix(grid.clone(), matrix)?;
    Ok((op, cutoff_range(grid.t()[0], grid.t_max(), lambda)))
}

/// `(L_s φ)(t) = e^{−s/2} φ(e^{−s} t)` on additive samples; values shifted off
/// the grid are dropped.
pub fn left_translation(grid: &Arc<RadialGrid>, shift: f64) -> Result<KernelOperator> {
    let k = grid.lattice_steps(shift).ok_or(Error::NonLatticeShift {
        shift,
        step: grid.step(),
    })?;
    let n = grid.len() as i64;
    let scale = Complex64::new((-(k as f64) * grid.step() / 2.0).exp(), 0.0);
    let mut matrix = CMatrix::zeros(n as usize, n as usize);
    for i in 0..n {
        let j = i - k;
        if (0..n).contains(&j) {
            matrix[(i as usize, j as usize)] = scale;
        }
    }
    KernelOperator::from_matrix(grid.clone(), Picture::Additive, matrix)
}

/// Lattice of dilations `g = e^{m h}` carrying `f`, with trapezoid weight `h`.
/// Quotients of grid nodes lie on this lattice (not on the nodes themselves).
fn dilation_samples(step: f64, half_range: f64, f: &TestFunction) -> Result<Vec<(i64, f64)>> {
    if f.support_radius >= half_range {
        return Err(Error::SupportOverflow {
            support_radius: f.support_radius,
            half_range,
        });
    }
    let m_max = (f.support_radius / step).ceil() as i64;
    Ok((-m_max..=m_max)
        .map(|m| (m, f.eval_log(m as f64 * step)))
        .filter(|(_, v)| *v != 0.0)
        .collect())
}

/// `U_f = ∫ f(g) L(g) d*g` as a multiplicative convolution on the log lattice:
/// `(U_f φ)(t_i) = Σ_m f(e^{mh}) e^{−mh/2} φ(t_{i−m}) h`.
pub fn u_f(grid: &Arc<RadialGrid>, f: &TestFunction) -> Result<KernelOperator> {
    let h = grid.step();
    let taps = dilation_samples(h, grid.half_range(), f)?;
    let n = grid.len() as i64;
    let mut matrix = CMatrix::zeros(n as usize, n as usize);
    for &(m, fv) in &taps {
        let c = fv * (-(m as f64) * h / 2.0).exp() * h;
        for i in 0..n {
            let j = i - m;
            if (0..n).contains(&j) {
                matrix[(i as usize, j as usize)] += Complex64::new(c, 0.0);
            }
        }
    }
    KernelOperator::from_matrix(grid.clone(), Picture::Additive, matrix)
}

/// `U_f` on the signed ℝ grid. The dilation group is `ℝ^×`, so each sign of
/// `g` carries half of the radial weight.
pub fn signed_u_f(grid: &Arc<SignedGrid>, f: &TestFunction) -> Result<KernelOperator> {
    let h = grid.step();
    let half = (grid.log_t()[grid.n_half() - 1] - grid.log_t()[0]) / 2.0;
    let taps = dilation_samples(h, half, f)?;
    let n = grid.n_half() as i64;
    let mut matrix = CMatrix::zeros(grid.len(), grid.len());
    for &(m, fv) in &taps {
        let c = Complex64::new(fv * (-(m as f64) * h / 2.0).exp() * h / 2.0, 0.0);
        for k in 0..n {
            let kk = k - m;
            if !(0..n).contains(&kk) {
                continue;
            }
            for row in [grid.pos_index(k as usize), grid.neg_index(k as usize)] {
                matrix[(row, grid.pos_index(kk as usize))] += c;
                matrix[(row, grid.neg_index(kk as usize))] += c;
            }
        }
    }
    KernelOperator::from_signed_matrix(grid.clone(), matrix)
}

/// Weighted `ℓ¹` norm `Σ_m |f(e^{mh})| h`, which bounds `‖U_f‖`.
pub fn u_f_l1_bound(grid: &RadialGrid, f: &TestFunction) -> Result<f64> {
    let h = grid.step();
    Ok(dilation_samples(h, grid.half_range(), f)?
        .iter()
        .map(|(_, v)| v.abs() * h)
        .sum())
}

/// `Σ_m f(e^{mh}) h · L(mh)`: the second construction of `U_f`.
pub fn u_f_from_translations(grid: &Arc<RadialGrid>, f: &TestFunction) -> Result<KernelOperator> {
    let h = grid.step();
    let taps = dilation_samples(h, grid.half_range(), f)?;
    let n = grid.len();
    let mut matrix = CMatrix::zeros(n, n);
    for &(m, fv) in &taps {
        let l = left_translation(grid, m as f64 * h)?;
        matrix += l.into_matrix() * Complex64::new(fv * h, 0.0);
    }
    KernelOperator::from_matrix(grid.clone(), Picture::Additive, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldBackend, FieldId};
    use crate::linalg::frobenius;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(id: FieldId, l: f64, n: usize) -> Arc<RadialGrid> {
        Arc::new(RadialGrid::new(FieldBackend::new(id), l, n).unwrap())
    }

    fn random_op(g: &Arc<RadialGrid>, picture: Picture, rng: &mut ChaCha8Rng) -> KernelOperator {
        KernelOperator::from_kernel(Domain::Radial(g.clone()), picture, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn cutoff_extremes_and_projection_law() {
        let g = grid(FieldId::C, 3.0, 40);
        let (p, r) = cutoff_projection(&g, 100.0, Picture::Additive).unwrap();
        assert_eq!(r, CutoffRange::CoversGrid);
        assert_eq!(p.matrix(), &CMatrix::identity(40, 40));
        let (z, r) = cutoff_projection(&g, 1e-3, Picture::Additive).unwrap();
        assert_eq!(r, CutoffRange::BelowGrid);
        assert_eq!(frobenius(z.matrix()), 0.0);
        let (p, r) = cutoff_projection(&g, 2.0, Picture::Additive).unwrap();
        assert_eq!(r, CutoffRange::Inside);
        assert_eq!(p.compose(&p).unwrap().matrix(), p.matrix());
        assert_eq!(p.adjoint().matrix(), p.matrix());
        assert!(cutoff_projection(&g, 0.0, Picture::Additive).is_err());
    }

    #[test]
    fn cutoff_is_closed() {
        let g = grid(FieldId::R, 3.0, 40);
        let lam = g.t()[25];
        let (p, _) = cutoff_projection(&g, lam, Picture::Multiplicative).unwrap();
        assert_eq!(p.matrix()[(25, 25)].re, 1.0);
        assert_eq!(p.matrix()[(26, 26)].re, 0.0);
    }

    #[test]
    fn projection_singular_values_are_ones() {
        let g = grid(FieldId::H, 3.0, 30);
        let (p, _) = cutoff_projection(&g, 2.0, Picture::Additive).unwrap();
        let s = p.singular_values();
        let k = g.count_at_most(2.0);
        assert!(s[..k].iter().all(|v| (v - 1.0).abs() < 1e-12));
        assert!(s[k..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn translations_are_isometric_on_interior_profiles() {
        let g = grid(FieldId::H, 6.0, 200);
        let s = 7.0 * g.step();
        let l = left_translation(&g, s).unwrap();
        let back = left_translation(&g, -s).unwrap();
        assert_eq!(left_translation(&g, 0.0).unwrap().matrix(), &CMatrix::identity(200, 200));
        let phi: Vec<Complex64> = g
            .log_t()
            .iter()
            .map(|&u| Complex64::new(crate::test_function::bump(u / 3.0), 0.0))
            .collect();
        let moved = l.apply(&phi);
        let gp = |v: &[Complex64]| {
            v.iter()
                .zip(g.w_add())
                .map(|(z, w)| z.norm_sqr() * w)
                .sum::<f64>()
                .sqrt()
        };
        assert!((gp(&moved) - gp(&phi)).abs() < 1e-12 * gp(&phi));
        let round = back.apply(&moved);
        for (a, b) in round.iter().zip(&phi) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(matches!(
            left_translation(&g, 0.5 * g.step()),
            Err(Error::NonLatticeShift { .. })
        ));
    }

    #[test]
    fn u_f_two_constructions_agree() {
        let g = grid(FieldId::C, 4.0, 128);
        let f = TestFunction::asymmetric();
        let a = u_f(&g, &f).unwrap();
        let b = u_f_from_translations(&g, &f).unwrap();
        let d = frobenius(&(a.matrix() - b.matrix()));
        let max = a.matrix().iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(d <= 1e-12 * max);
    }

    #[test]
    fn u_f_norm_bound_and_support() {
        let g = grid(FieldId::R, 4.0, 128);
        let f = TestFunction::standard();
        let a = u_f(&g, &f).unwrap();
        let bound = u_f_l1_bound(&g, &f).unwrap();
        assert!(a.singular_values()[0] <= bound * (1.0 + 1e-9));
        let small = grid(FieldId::R, 1.0, 16);
        assert!(matches!(u_f(&small, &f), Err(Error::SupportOverflow { .. })));
    }

    #[test]
    fn narrow_bump_is_an_approximate_identity() {
        let g = grid(FieldId::R, 5.0, 400);
        let raw = TestFunction::gaussian_bump(0.0, 0.03, 0.15).unwrap();
        let mass = raw.l1_mult();
        let f = raw.scaled(1.0 / mass);
        let u = u_f(&g, &f).unwrap();
        let phi: Vec<Complex64> = g
            .log_t()
            .iter()
            .map(|&u| Complex64::new((-(u * u) / 2.0).exp() * crate::test_function::bump(u / 4.0), 0.0))
            .collect();
        let out = u.apply(&phi);
        let err = out.iter().zip(&phi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        // Deviation of order width² times the curvature of e^{-u/2}φ.
        assert!(err < 5e-3, "{err}");
    }

    #[test]
    fn u_f_commutes_with_translations_inside() {
        let g = grid(FieldId::H, 6.0, 240);
        let f = TestFunction::standard();
        let u = u_f(&g, &f).unwrap();
        let l = left_translation(&g, 11.0 * g.step()).unwrap();
        let c = u.compose(&l).unwrap().matrix() - l.compose(&u).unwrap().matrix();
        let r = 40..200;
        let block = c.view((r.start, r.start), (r.len(), r.len())).into_owned();
        assert!(frobenius(&block) < 1e-10);
    }

    #[test]
    fn interior_translation_block_is_unitary() {
        let g = grid(FieldId::C, 4.0, 100);
        let l = left_translation(&g, -5.0 * g.step()).unwrap();
        let w = g.w_add();
        let r = 10..90;
        let sym = CMatrix::from_fn(r.len(), r.len(), |i, j| {
            let (i, j) = (i + r.start, j + r.start);
            l.matrix()[(i, j)] * (w[i] / w[j]).sqrt()
        });
        let sv = singular_values_desc(&sym);
        // The block loses 5 columns off its edge; the rest is an isometry.
        assert!(sv[..75].iter().all(|v| (v - 1.0).abs() < 1e-12), "{:?}", &sv[..5]);
    }

    #[test]
    fn hs_identity_on_random_kernels() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = grid(FieldId::H, 2.0, 20);
        for _ in 0..20 {
            let a = random_op(&g, Picture::Additive, &mut rng);
            let b = random_op(&g, Picture::Additive, &mut rng);
            let hs = a.hs_inner(&b).unwrap();
            let tr = a.adjoint().compose(&b).unwrap().trace();
            assert!(rel(hs, tr) < 1e-10);
            assert!(a.hs_inner(&a).unwrap().re > 0.0);
        }
        let z = KernelOperator::from_kernel(Domain::Radial(g.clone()), Picture::Additive, |_, _| Complex64::new(0.0, 0.0));
        assert_eq!(z.hs_inner(&z).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn identity_matrix_trace_counts_nodes() {
        let g = grid(FieldId::R, 2.0, 20);
        let id = KernelOperator::identity(Domain::Radial(g.clone()), Picture::Additive);
        assert!((id.trace().re - 20.0).abs() < 1e-12);
        // Not Hilbert–Schmidt in the continuum: the pairing with itself is Σ w_i w_i / w_i².
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_op(&g, Picture::Additive, &mut rng);
        assert!(rel(a.hs_inner(&id).unwrap(), a.trace()) > 1e-3);
    }

    #[test]
    fn rank_one_trace() {
        let g = grid(FieldId::C, 2.0, 20);
        let phi: Vec<Complex64> = (0..20).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let psi: Vec<Complex64> = (0..20).map(|i| Complex64::new(1.0, -(i as f64) / 3.0)).collect();
        let op = KernelOperator::rank_one(Domain::Radial(g.clone()), Picture::Multiplicative, &phi, &psi);
        let inner: Complex64 = psi
            .iter()
            .zip(&phi)
            .zip(g.w_mult())
            .map(|((p, f), w)| p.conj() * f * w)
            .sum();
        assert!(rel(op.trace(), inner) < 1e-13);
    }

    #[test]
    fn mixed_pictures_are_rejected() {
        let g = grid(FieldId::C, 2.0, 20);
        let a = KernelOperator::identity(Domain::Radial(g.clone()), Picture::Additive);
        let b = KernelOperator::identity(Domain::Radial(g.clone()), Picture::Multiplicative);
        assert!(a.compose(&b).is_err());
        let other = grid(FieldId::C, 2.0, 22);
        let c = KernelOperator::identity(Domain::Radial(other), Picture::Additive);
        assert!(a.hs_inner(&c).is_err());
        assert!(KernelOperator::from_matrix(g, Picture::Additive, CMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn signed_u_f_kills_odd_functions() {
        let sg = Arc::new(SignedGrid::aligned(2f64.ln() / 10.0, 20.0, 120).unwrap());
        let u = signed_u_f(&sg, &TestFunction::standard()).unwrap();
        let odd: Vec<Complex64> = sg.x().iter().map(|&x| Complex64::new(x * (-x * x).exp(), 0.0)).collect();
        assert!(u.apply(&odd).iter().all(|z| z.norm() < 1e-15));
        let (p, _) = signed_cutoff_projection(&sg, 2.0).unwrap();
        let k = sg.count_at_most(2.0);
        assert!((p.trace().re - 2.0 * k as f64).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn adjoint_laws(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = grid(FieldId::H, 2.0, 12);
            let a = random_op(&g, Picture::Multiplicative, &mut rng);
            let b = random_op(&g, Picture::Multiplicative, &mut rng);
            let aa = a.adjoint().adjoint();
            prop_assert!(frobenius(&(aa.matrix() - a.matrix())) < 1e-12 * frobenius(a.matrix()));
            let lhs = a.compose(&b).unwrap().adjoint();
            let rhs = b.adjoint().compose(&a.adjoint()).unwrap();
            prop_assert!(frobenius(&(lhs.matrix() - rhs.matrix())) < 1e-12 * frobenius(lhs.matrix()));
            let id = KernelOperator::identity(Domain::Radial(g.clone()), Picture::Multiplicative);
            let ai = a.compose(&id).unwrap();
            prop_assert_eq!(ai.matrix(), a.matrix());
            let ab = a.compose(&b).unwrap().trace();
            let ba = b.compose(&a).unwrap().trace();
            prop_assert!(rel(ab, ba) < 1e-10);
        }
    }
}

use alloc::vec::Vec;

use nalgebra::DVector;
use num_complex::Complex64;

use super::commutant::{commutant_of_set, RANK_TOL};
use crate::error::{Error, Result};
use crate::linalg::{commutator, frobenius, hermitian_defect, psd_sqrt_and_pinv_sqrt, CMatrix};

/// Commutation accepted as exact.
pub const COMMUTE_TOL: f64 = 1e-10;

fn check_commutes(m: &CMatrix, action: &[CMatrix]) -> Result<()> {
    for (index, x) in action.iter().enumerate() {
        let defect = frobenius(&commutator(m, x));
        if !(defect < COMMUTE_TOL) {
            return Err(Error::NotCommuting { index, defect });
        }
    }
    Ok(())
}

/// `a(x) = (Mψ)(x) / ψ(x)` for `M` commuting with every character in
/// `characters` (given as diagonal matrices).
pub fn multiplier_of(m: &CMatrix, characters: &[CMatrix], psi: &[Complex64]) -> Result<Vec<Complex64>> {
    if psi.len() != m.ncols() {
        return Err(Error::Domain(alloc::format!(
            "ψ has {} entries for a {}-point space",
            psi.len(),
            m.ncols()
        )));
    }
    if let Some(k) = psi.iter().position(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(Error::Domain(alloc::format!("ψ vanishes at point {k}")));
    }
    check_commutes(m, characters)?;
    let mpsi = m * DVector::from_column_slice(psi);
    Ok(mpsi.iter().zip(psi).map(|(a, b)| a / b).collect())
}

/// `M = U P` with `P = (M*M)^{1/2}` and `U = M P⁺` (a partial isometry).
pub fn polar_decompose(m: &CMatrix) -> (CMatrix, CMatrix) {
    let (p, p_pinv) = psd_sqrt_and_pinv_sqrt(&(m.adjoint() * m), 1e-24);
    (m * p_pinv, p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventReport {
    /// `‖RR* − R*R‖_F` for `R = (M + i)⁻¹`.
    pub normality_defect: f64,
    pub rank_plus: usize,
    pub rank_minus: usize,
    pub dimension: usize,
    pub commutant_dimension: usize,
}

impl ResolventReport {
    /// Both `M ± i` have full range.
    pub fn full_rank(&self) -> bool {
        self.rank_plus == self.dimension && self.rank_minus == self.dimension
    }
}

fn rank(m: &CMatrix) -> usize {
    let s = m.singular_values();
    let smax = s.iter().cloned().fold(0.0, f64::max);
    s.iter().filter(|&&v| v >= RANK_TOL * smax.max(1.0)).count()
}

/// Checks the hypotheses (symmetric `M`, commuting with an action whose
/// commutant is abelian) and then the resolvent mechanism.
pub fn resolvent_normality_check(m: &CMatrix, action: &[CMatrix]) -> Result<ResolventReport> {
    let n = m.nrows();
    let defect = hermitian_defect(m);
    if !(defect < COMMUTE_TOL) {
        return Err(Error::NotSymmetric { defect });
    }
    check_commutes(m, action)?;
    let commutant = commutant_of_set(action, n);
    if !commutant.is_abelian {
        return Err(Error::NonAbelianCommutant);
    }
    let i = Complex64::new(0.0, 1.0);
    let id = CMatrix::identity(n, n);
    let plus = m + &id * i;
    let minus = m - &id * i;
    let r = plus
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Domain("M + i is singular".into()))?;
    let rs = r.adjoint();
    Ok(ResolventReport {
        normality_defect: frobenius(&(&r * &rs - &rs * &r)),
        rank_plus: rank(&plus),
        rank_minus: rank(&minus),
        dimension: n,
        commutant_dimension: commutant.dimension(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::diag;
    use crate::sandbox::commutant::character_action;
    use crate::sandbox::FiniteGroup;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| c(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0))).collect()
    }

    #[test]
    fn read_off_diagonal() {
        let g = FiniteGroup::cyclic_product(&[3]).unwrap();
        let ch = character_action(&g).unwrap();
        let m = diag(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let a = multiplier_of(&m, &ch, &[c(1.0, 0.0); 3]).unwrap();
        assert_eq!(a, [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
    }

    #[test]
    fn multiplier_errors() {
        let g = FiniteGroup::cyclic_product(&[4]).unwrap();
        let ch = character_action(&g).unwrap();
        let m = diag(&[c(1.0, 0.0); 4]);
        assert!(multiplier_of(&m, &ch, &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        let shift = g.left_translation(1);
        assert!(matches!(
            multiplier_of(&shift, &ch, &[c(1.0, 0.0); 4]),
            Err(Error::NotCommuting { index: 1, .. })
        ));
    }

    #[test]
    fn polar_of_diagonal() {
        let m = diag(&[Complex64::from_polar(2.0, 0.7), c(0.0, 0.0), Complex64::from_polar(0.5, -2.0)]);
        let (u, p) = polar_decompose(&m);
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, 0.7)).norm() < 1e-12);
        assert!(u[(1, 1)].norm() < 1e-12);
        assert!((p[(0, 0)].re - 2.0).abs() < 1e-12 && (p[(2, 2)].re - 0.5).abs() < 1e-12);
        assert!(frobenius(&(m - u * p)) < 1e-12);
    }

    #[test]
    fn biregular_class_convolutions_have_normal_resolvents() {
        for g in [FiniteGroup::symmetric3(), FiniteGroup::quaternion8(), FiniteGroup::dihedral4()] {
            let k = g.conjugacy_classes().len();
            let vals: Vec<Complex64> = (0..k).map(|i| c(1.0 + i as f64 * 0.37, 0.0)).collect();
            let m = g.class_convolution(&vals).unwrap();
            let r = resolvent_normality_check(&m, &g.biregular_action()).unwrap();
            assert!(r.normality_defect < 1e-8 && r.full_rank());
            assert_eq!(r.commutant_dimension, k);
        }
    }

    #[test]
    fn precondition_violations_are_named() {
        let g = FiniteGroup::cyclic_product(&[5]).unwrap();
        let ch = character_action(&g).unwrap();
        // Symmetric but not diagonal: fails to commute with χ₁.
        let m = g.left_translation(1) + g.left_translation(4);
        assert!(matches!(resolvent_normality_check(&m, &ch), Err(Error::NotCommuting { index: 1, .. })));
        let skew = diag(&[c(0.0, 1.0); 5]);
        assert!(matches!(resolvent_normality_check(&skew, &ch), Err(Error::NotSymmetric { .. })));
        let s3 = FiniteGroup::symmetric3();
        let id = CMatrix::identity(6, 6);
        assert_eq!(
            resolvent_normality_check(&id, &s3.translation_action()).unwrap_err(),
            Error::NonAbelianCommutant
        );
    }

    #[test]
    fn symmetric_circulant_under_translations() {
        let g = FiniteGroup::cyclic_product(&[8]).unwrap();
        let weights = [3.0, 1.0, -0.5, 0.25, 2.0];
        let mut m = CMatrix::zeros(8, 8);
        for (s, w) in weights.iter().enumerate() {
            let t = g.left_translation(s) + g.left_translation((8 - s) % 8);
            m += t * c(w / 2.0, 0.0);
        }
        let r = resolvent_normality_check(&m, &g.translation_action()).unwrap();
        assert!(r.normality_defect < 1e-10 && r.full_rank());
        assert_eq!(r.commutant_dimension, 8);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn multiplier_and_polar_on_random_diagonals(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = FiniteGroup::cyclic_product(&[2, 4]).unwrap();
            let ch = character_action(&g).unwrap();
            let a = random_vec(&mut rng, 8);
            let m = diag(&a);
            let psi1 = random_vec(&mut rng, 8);
            let psi2 = random_vec(&mut rng, 8);
            let a1 = multiplier_of(&m, &ch, &psi1).unwrap();
            let a2 = multiplier_of(&m, &ch, &psi2).unwrap();
            prop_assert!(frobenius(&(diag(&a1) - &m)) < 1e-12 * frobenius(&m));
            prop_assert!(a1.iter().zip(&a2).all(|(x, y)| (x - y).norm() < 1e-10));
            let adj = multiplier_of(&m.adjoint(), &ch, &psi1).unwrap();
            prop_assert!(adj.iter().zip(&a1).all(|(x, y)| (x - y.conj()).norm() < 1e-12));
            let (u, p) = polar_decompose(&m);
            prop_assert!(frobenius(&(&m - &u * &p)) < 1e-10);
            for x in &ch {
                prop_assert!(frobenius(&commutator(&u, x)) < 1e-8);
                prop_assert!(frobenius(&commutator(&p, x)) < 1e-8);
            }
        }

        #[test]
        fn polar_reconstructs_random_matrices(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = CMatrix::from_fn(6, 6, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let (u, p) = polar_decompose(&m);
            prop_assert!(frobenius(&(&m - &u * &p)) < 1e-10);
            prop_assert!(hermitian_defect(&p) < 1e-12);
        }
    }
}

use alloc::vec::Vec;

use num_complex::Complex64;

use super::group::FiniteGroup;
use crate::error::Result;
use crate::linalg::{commutator, diag, frobenius, nullspace, CMatrix};

/// Rank decisions: singular values below `RANK_TOL · max(1, σ_max)` are zero.
pub const RANK_TOL: f64 = 1e-10;
/// Commutators of normalized basis elements below this count as zero.
pub const ABELIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Commutant {
    /// Orthonormal basis for the Frobenius inner product.
    pub basis: Vec<CMatrix>,
    pub is_abelian: bool,
}

impl Commutant {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Largest off-diagonal Frobenius mass over the basis.
    pub fn off_diagonal_mass(&self) -> f64 {
        self.basis
            .iter()
            .map(|b| {
                let mut m = b.clone();
                m.fill_diagonal(Complex64::new(0.0, 0.0));
                frobenius(&m)
            })
            .fold(0.0, f64::max)
    }

    /// Largest commutator norm between basis elements.
    pub fn max_commutator(&self) -> f64 {
        max_pairwise_commutator(&self.basis)
    }
}

fn max_pairwise_commutator(basis: &[CMatrix]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            worst = worst.max(frobenius(&commutator(a, b)));
        }
    }
    worst
}

/// Joint solutions of `X C − C X = 0` over all `X`, from the nullspace of the
/// stacked complex system on `vec(C)` (column-major).
pub fn commutant_of_set(operators: &[CMatrix], n: usize) -> Commutant {
    let nn = n * n;
    let rows = operators.len().max(1) * nn;
    let mut system = CMatrix::zeros(rows, nn);
    for (k, x) in operators.iter().enumerate() {
        // vec(XC) = (I ⊗ X) vec(C), vec(CX) = (Xᵀ ⊗ I) vec(C).
        for col in 0..n {
            for i in 0..n {
                let r = k * nn + col * n + i;
                for l in 0..n {
                    system[(r, col * n + l)] += x[(i, l)];
                    system[(r, l * n + i)] -= x[(l, col)];
                }
            }
        }
    }
    let basis: Vec<CMatrix> = nullspace(&system, RANK_TOL)
        .into_iter()
        .map(|v| CMatrix::from_column_slice(n, n, v.as_slice()))
        .collect();
    let is_abelian = max_pairwise_commutator(&basis) < ABELIAN_TOL;
    Commutant { basis, is_abelian }
}

/// Character multiplications of an abelian group, as diagonal matrices.
pub fn character_action(g: &FiniteGroup) -> Result<Vec<CMatrix>> {
    Ok(g.characters()?.iter().map(|c| diag(c)).collect())
}

pub fn commutant_of_characters(g: &FiniteGroup) -> Result<Commutant> {
    Ok(commutant_of_set(&character_action(g)?, g.order()))
}

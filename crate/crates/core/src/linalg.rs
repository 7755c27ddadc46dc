//! Small dense linear-algebra helpers on top of `nalgebra`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

pub type CMatrix = DMatrix<Complex64>;

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn diag(values: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values))
}

/// `‖M − M*‖_F / max(1, ‖M‖_F)`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    frobenius(&(m - m.adjoint())) / frobenius(m).max(1.0)
}

/// Orthonormal basis of `{x : A x = 0}`, deciding rank with singular values
/// below `tol · max(1, σ_max)`.
pub fn nullspace(a: &CMatrix, tol: f64) -> Vec<nalgebra::DVector<Complex64>> {
    let n = a.ncols();
    if n == 0 {
        return Vec::new();
    }
    // nalgebra's thin SVD only returns a full V when rows >= cols.
    let padded;
    let a = if a.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        padded = p;
        &padded
    } else {
        a
    };
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = tol * smax.max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < cut)
        .map(|(k, _)| v_t.row(k).adjoint())
        .collect()
}

/// Spectral square root and pseudo-inverse square root of a positive
/// semidefinite hermitian matrix. Eigenvalues below `tol · λ_max` count as zero.
pub fn psd_sqrt_and_pinv_sqrt(m: &CMatrix, tol: f64) -> (CMatrix, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let n = m.nrows();
    let mut root = CMatrix::zeros(n, n);
    let mut pinv = CMatrix::zeros(n, n);
    for k in 0..n {
        let lam = eig.eigenvalues[k].max(0.0);
        let v = eig.eigenvectors.column(k);
        let outer = v * v.adjoint();
        root += &outer * Complex64::new(lam.sqrt(), 0.0);
        if lam > tol * lmax.max(f64::MIN_POSITIVE) {
            pinv += outer * Complex64::new(1.0 / lam.sqrt(), 0.0);
        }
    }
    (root, pinv)
}

pub fn singular_values_desc(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    s
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

//! Least-squares fit of `T(Λ) ≈ slope · 2 log Λ + intercept`.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use super::TraceReport;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Slope: estimates `f(1)`.
    pub f1_estimate: f64,
    /// Intercept: estimates `−H(f)(1)`.
    pub minus_h_estimate: f64,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub lambdas: Vec<f64>,
}

/// Reports whose tail bound is below a tenth of the smallest `|T|` in the
/// sweep, i.e. those already in the asymptotic regime.
pub fn select_in_regime(reports: &[TraceReport]) -> Vec<TraceReport> {
    let min_t = reports
        .iter()
        .map(|r| r.t_route_b.abs())
        .fold(f64::INFINITY, f64::min);
    reports
        .iter()
        .filter(|r| r.error_bound < 0.1 * min_t)
        .copied()
        .collect()
}

/// Fits `t_route_b` against `(2 log Λ, 1)` over all given reports.
pub fn asymptotic_fit(reports: &[TraceReport]) -> Result<FitResult> {
    let xs: Vec<f64> = reports.iter().map(|r| 2.0 * r.lambda.ln()).collect();
    let ys: Vec<f64> = reports.iter().map(|r| r.t_route_b).collect();
    let (slope, intercept) = linear_fit(&xs, &ys)?;
    let residuals: Vec<f64> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (slope * x + intercept))
        .collect();
    Ok(FitResult {
        f1_estimate: slope,
        minus_h_estimate: intercept,
        max_residual: residuals.iter().map(|r| r.abs()).fold(0.0, f64::max),
        residuals,
        lambdas: reports.iter().map(|r| r.lambda).collect(),
    })
}

/// Ordinary least squares for `y = a x + b`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    let n = xs.len() as f64;
    let mut distinct: Vec<f64> = xs.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::DegenerateFit(alloc::format!(
            "need at least 2 distinct cutoffs, got {}",
            distinct.len()
        )));
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let a = sxy / sxx;
    Ok((a, my - a * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(lambda: f64, t: f64, bound: f64) -> TraceReport {
        TraceReport {
            lambda,
            t_route_a: t,
            t_route_b: t,
            t_route_c: None,
            asymptote: t,
            error_bound: bound,
            unitarity_defect: 0.0,
        }
    }

    #[test]
    fn exact_line_is_recovered() {
        let (a, b) = (0.486_752, 1.131_48);
        let rs: Vec<TraceReport> = [2.0f64, 4.0, 8.0, 16.0, 32.0]
            .iter()
            .map(|&l| report(l, a * 2.0 * l.ln() + b, 0.0))
            .collect();
        let fit = asymptotic_fit(&rs).unwrap();
        assert!((fit.f1_estimate - a).abs() < 1e-12);
        assert!((fit.minus_h_estimate - b).abs() < 1e-12);
        assert!(fit.max_residual < 1e-12);
    }

    #[test]
    fn degenerate_designs() {
        assert!(matches!(asymptotic_fit(&[]), Err(Error::DegenerateFit(_))));
        let same = [report(4.0, 1.0, 0.0), report(4.0, 1.1, 0.0)];
        assert!(matches!(asymptotic_fit(&same), Err(Error::DegenerateFit(_))));
    }

    #[test]
    fn regime_selection() {
        let rs = [report(2.0, 2.0, 0.5), report(4.0, 3.0, 0.1), report(8.0, 4.0, 1e-3)];
        let kept: Vec<f64> = select_in_regime(&rs).iter().map(|r| r.lambda).collect();
        assert_eq!(kept, [4.0, 8.0]);
        let zeros = [report(2.0, 0.0, 0.0), report(4.0, 0.0, 0.0)];
        assert!(select_in_regime(&zeros).is_empty());
    }
}

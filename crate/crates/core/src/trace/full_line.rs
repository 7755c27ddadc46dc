//! Route C: `Tr(P_Λ F⁻¹ P_Λ · U_f F)` over the whole signed ℝ grid.
//!
//! The dense product never has to be formed. Column `x` of `U_f F` only needs
//! column `x` of `F`, and since `U_f` is a convolution on the log lattice that
//! treats both signs alike, the column is one short correlation per node.
//! Each pair `(x, y)` is booked under `max(|x|, |y|)`, so one pass yields the
//! trace for every cutoff.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fourier::FullLineFourier;
use crate::grid::SignedGrid;
use crate::operator::{signed_cutoff_projection, signed_u_f};
use crate::test_function::TestFunction;

pub struct FullLineTrace {
    grid: Arc<SignedGrid>,
    forward: FullLineFourier,
    inverse: FullLineFourier,
    test_function: TestFunction,
    /// `(m, f(e^{mh}) e^{−mh/2} h/2)`: weight of the dilation by `±e^{mh}`.
    taps: Vec<(i64, f64)>,
    defect: f64,
}

impl FullLineTrace {
    /// Builds both transforms and measures the defect of `F`, rejecting grids
    /// whose defect exceeds `defect_threshold`.
    pub fn new(grid: Arc<SignedGrid>, f: TestFunction, defect_threshold: f64) -> Result<Self> {
        let h = grid.step();
        let radius = (grid.log_t()[grid.n_half() - 1] - grid.log_t()[0]) / 2.0;
        if f.support_radius >= radius {
            return Err(Error::SupportOverflow {
                support_radius: f.support_radius,
                half_range: radius,
            });
        }
        let m_max = (f.support_radius / h).ceil() as i64;
        let taps = (-m_max..=m_max)
            .map(|m| {
                let u = m as f64 * h;
                (m, f.eval_log(u) * (-u / 2.0).exp() * h / 2.0)
            })
            .filter(|(_, c)| *c != 0.0)
            .collect();
        let forward = FullLineFourier::forward(grid.clone());
        let inverse = FullLineFourier::inverse(grid.clone());
        let defect = forward.defect();
        if !(defect <= defect_threshold) {
            return Err(Error::FourierDefect {
                defect,
                threshold: defect_threshold,
            });
        }
        Ok(FullLineTrace {
            grid,
            forward,
            inverse,
            test_function: f,
            taps,
            defect,
        })
    }

    pub fn grid(&self) -> &Arc<SignedGrid> {
        &self.grid
    }
    pub fn unitarity_defect(&self) -> f64 {
        self.defect
    }
    pub fn forward(&self) -> &FullLineFourier {
        &self.forward
    }

    fn check(&self, lambdas: &[f64]) -> Result<()> {
        let max = self.grid.t_max() * (-1.5f64).exp();
        for &l in lambdas {
            if !(l > 0.0) || l > max {
                return Err(Error::LambdaOutOfRange {
                    lambda: l,
                    max_lambda: max,
                });
            }
        }
        Ok(())
    }

    /// `T(Λ)` for every cutoff in one streaming pass. Cutoffs must leave room
    /// for the support of `f` (`Λ e^{ρ} ≤ t_max`, here with `ρ ≤ 1.5`).
    pub fn traces(&self, lambdas: &[f64]) -> Result<Vec<Complex64>> {
        self.check(lambdas)?;
        let g = &self.grid;
        let nh = g.n_half();
        let counts: Vec<usize> = lambdas.iter().map(|&l| g.count_at_most(l)).collect();
        let s = counts.iter().copied().max().unwrap_or(0);
        if s == 0 {
            return Ok(vec![Complex64::new(0.0, 0.0); lambdas.len()]);
        }
        let m_hi = self.taps.iter().map(|t| t.0).max().unwrap_or(0).max(0) as usize;
        let rows = (s + m_hi).min(nh);
        let mut buckets = vec![Complex64::new(0.0, 0.0); s];
        let mut even = vec![Complex64::new(0.0, 0.0); rows];
        let mut b = vec![Complex64::new(0.0, 0.0); s];
        for x in (nh - s)..(nh + s) {
            let kx = if x >= nh { x - nh } else { nh - 1 - x };
            for (kk, e) in even.iter_mut().enumerate() {
                *e = self.forward.entry(g.pos_index(kk), x) + self.forward.entry(g.neg_index(kk), x);
            }
            for (k, bk) in b.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(m, c) in &self.taps {
                    let j = k as i64 - m;
                    if j >= 0 && (j as usize) < rows {
                        acc += even[j as usize] * c;
                    }
                }
                *bk = acc;
            }
            for (k, bk) in b.iter().enumerate() {
                let a = self.inverse.entry(x, g.pos_index(k)) + self.inverse.entry(x, g.neg_index(k));
                buckets[kx.max(k)] += a * bk;
            }
        }
        let mut prefix = Vec::with_capacity(s + 1);
        let mut acc = Complex64::new(0.0, 0.0);
        prefix.push(acc);
        for v in &buckets {
            acc += v;
            prefix.push(acc);
        }
        Ok(counts.iter().map(|&c| prefix[c]).collect())
    }

    /// Dense `(Tr(P F⁻¹ P·U_f F), Tr(F·P F⁻¹ P·U_f))` per cutoff, for small grids.
    pub fn dense_traces(&self, lambdas: &[f64]) -> Result<Vec<(Complex64, Complex64)>> {
        self.check(lambdas)?;
        let u = signed_u_f(&self.grid, &self.test_function)?;
        let f = self.forward.to_operator();
        let finv = self.inverse.to_operator();
        let uf = u.compose(&f)?;
        lambdas
            .iter()
            .map(|&l| {
                let (p, _) = signed_cutoff_projection(&self.grid, l)?;
                let a = p.compose(&finv)?.compose(&p)?;
                let main = a.compose(&uf)?.trace();
                let cyclic = f.compose(&a)?.compose(&u)?.trace();
                Ok((main, cyclic))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldBackend, FieldId};
    use crate::fourier::FourierGate;
    use crate::grid::RadialGrid;
    use crate::trace::ConnesTrace;
    use crate::fourier::FourierOperator;

    fn small() -> FullLineTrace {
        let sg = Arc::new(SignedGrid::aligned(2f64.ln() / 12.0, 30.0, 128).unwrap());
        FullLineTrace::new(sg, TestFunction::standard(), 1.0).unwrap()
    }

    #[test]
    fn streaming_matches_dense_and_cyclic() {
        let tr = small();
        let lams = [1.0, 2.0, 4.0];
        let fast = tr.traces(&lams).unwrap();
        let dense = tr.dense_traces(&lams).unwrap();
        for ((l, v), (main, cyc)) in lams.iter().zip(&fast).zip(dense) {
            assert!((main - v).norm() < 1e-10 * main.norm(), "Λ={l}: {main} {v}");
            assert!((main - cyc).norm() < 1e-8 * main.norm());
            assert!(main.im.abs() < 1e-8 * main.re.abs());
        }
    }

    #[test]
    fn vanishing_cutoff() {
        let tr = small();
        let t = tr.traces(&[1e-9]).unwrap();
        assert_eq!(t[0], Complex64::new(0.0, 0.0));
        assert!(tr.traces(&[1e6]).is_err());
    }

    #[test]
    fn agrees_with_route_b_on_a_moderate_grid() {
        let m = 20.0;
        let h = 2f64.ln() / m;
        let grid = Arc::new(RadialGrid::with_step(FieldBackend::new(FieldId::R), h, 2 * 150));
        let ct = ConnesTrace::new(
            FourierOperator::build(grid, FourierGate::permissive()).unwrap(),
            TestFunction::standard(),
        )
        .unwrap();
        let sg = Arc::new(SignedGrid::aligned(h, 20.0, 320).unwrap());
        let fl = FullLineTrace::new(sg, TestFunction::standard(), 1e-2).unwrap();
        let c = fl.traces(&[2.0]).unwrap()[0].re;
        let b = ct.trace_route_b(2.0).unwrap();
        assert!(((c - b) / b).abs() < 2e-2, "{c} vs {b}");
    }
}

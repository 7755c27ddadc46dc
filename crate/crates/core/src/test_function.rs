//! Smooth compactly supported test profiles on the module axis.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{RadialFunction, RadialGrid};

/// Partition-of-unity building block `e^{−1/x}` (zero for `x ≤ 0`).
fn psi(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Smooth mollifier: 1 on `|v| ≤ ½`, 0 on `|v| ≥ 1`.
pub fn bump(v: f64) -> f64 {
    let a = v.abs();
    if a <= 0.5 {
        return 1.0;
    }
    if a >= 1.0 {
        return 0.0;
    }
    let s = (a - 0.5) / 0.5;
    let p = psi(1.0 - s);
    p / (p + psi(s))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// `exp(−(u − c)²/(2σ²))·bump(u/ρ)` with `u = log t`.
    GaussianBump { center: f64, width: f64 },
    /// The zero function (degenerate control).
    Zero,
}

/// Test function `f` in the multiplicative picture, supported in
/// `|log t| ≤ support_radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub profile: Profile,
    pub support_radius: f64,
    /// Overall factor, so that linearity checks need no new profile.
    pub scale: f64,
}

impl TestFunction {
    pub fn gaussian_bump(center: f64, width: f64, support_radius: f64) -> Result<Self> {
        if !(width > 0.0) || !(support_radius > 0.0) || !center.is_finite() {
            return Err(Error::Domain(alloc::format!(
                "invalid bump (center {center}, width {width}, support {support_radius})"
            )));
        }
        Ok(TestFunction {
            profile: Profile::GaussianBump { center, width },
            support_radius,
            scale: 1.0,
        })
    }

    /// Default inversion-symmetric bump: `c = 0, σ = 0.25, ρ = 1.5`.
    pub fn standard() -> Self {
        Self::gaussian_bump(0.0, 0.25, 1.5).unwrap()
    }

    /// Asymmetric control: `c = 0.3`.
    pub fn asymmetric() -> Self {
        Self::gaussian_bump(0.3, 0.25, 1.5).unwrap()
    }

    pub fn zero() -> Self {
        TestFunction {
            profile: Profile::Zero,
            support_radius: 1.0,
            scale: 1.0,
        }
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.scale *= factor;
        self
    }

    /// `f` at `log t = u`.
    pub fn eval_log(&self, u: f64) -> f64 {
        match self.profile {
            Profile::Zero => 0.0,
            Profile::GaussianBump { center, width } => {
                let b = bump(u / self.support_radius);
                if b == 0.0 {
                    return 0.0;
                }
                self.scale * (-(u - center).powi(2) / (2.0 * width * width)).exp() * b
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_log(t.ln())
    }

    /// Exact `f(1)`: the bump equals 1 at the origin.
    pub fn value_at_1(&self) -> f64 {
        match self.profile {
            Profile::Zero => 0.0,
            Profile::GaussianBump { center, width } => {
                self.scale * (-center * center / (2.0 * width * width)).exp()
            }
        }
    }

    /// Samples on a grid, checking the support fits.
    pub fn sample(&self, grid: &Arc<RadialGrid>) -> Result<RadialFunction> {
        if self.support_radius >= grid.half_range() {
            return Err(Error::SupportOverflow {
                support_radius: self.support_radius,
                half_range: grid.half_range(),
            });
        }
        let samples: Vec<Complex64> = grid
            .log_t()
            .iter()
            .map(|&u| Complex64::new(self.eval_log(u), 0.0))
            .collect();
        RadialFunction::new(grid.clone(), samples)
    }

    /// `∫ |f| d*t` by the trapezoid rule on a fine log grid.
    pub fn l1_mult(&self) -> f64 {
        let n = 20_000;
        let r = self.support_radius;
        let h = 2.0 * r / n as f64;
        (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                w * self.eval_log(-r + i as f64 * h).abs()
            })
            .sum::<f64>()
            * h
    }
}

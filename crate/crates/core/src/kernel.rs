//! Sphere-averaged characters.
//!
//! For `x, y` with `m(x)·m(y) = u`, averaging `λ(xy)` over the sphere gives a
//! function of `u` alone:
//!
//! | field | `K(u)` |
//! |-------|--------|
//! | ℝ | `cos(2πu)` |
//! | ℂ | `J₀(4π√u)` |
//! | ℍ | `2J₁(z)/z`, `z = 4π u^{1/4}` |

use core::f64::consts::PI;


#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;
use crate::field::{FieldBackend, FieldId};

/// Grid steps per radian of phase above which a kernel entry is suppressed.
const TAPER_CENTER: f64 = 2.3;
const TAPER_WIDTH: f64 = 0.12;
/// Phase per step regarded as still resolved by the trapezoid rule.
const RESOLVED_PHASE: f64 = 1.5;

#[derive(Debug, Clone, Copy)]
pub struct CharacterKernel {
    pub backend: FieldBackend,
}

impl CharacterKernel {
    pub fn new(backend: FieldBackend) -> Self {
        CharacterKernel { backend }
    }

    /// Bessel argument `2π|c| u^{1/d}`.
    fn argument(&self, u: f64) -> f64 {
        let b = &self.backend;
        2.0 * PI * b.character_scale.abs() * u.powf(1.0 / b.euclidean_dim as f64)
    }

    /// `K(u)` for `u ≥ 0`.
    pub fn eval(&self, u: f64) -> f64 {
        let z = self.argument(u.max(0.0));
        match self.backend.field_id {
            FieldId::R => libm::cos(z),
            FieldId::C => libm::j0(z),
            FieldId::H => {
                if z < 1e-3 {
                    let z2 = z * z;
                    1.0 - z2 / 8.0 + z2 * z2 / 192.0
                } else {
                    2.0 * libm::j1(z) / z
                }
            }
        }
    }

    /// Phase growth of `K` per unit of `log u`.
    pub fn phase_rate(&self, u: f64) -> f64 {
        self.argument(u) / self.backend.euclidean_dim as f64
    }

    /// Smooth suppression of entries whose oscillation the log-grid with
    /// step `h` cannot resolve. Equals 1 to double precision below the
    /// resolved product.
    pub fn taper(&self, u: f64, h: f64) -> f64 {
        let x = (self.phase_rate(u) * h - TAPER_CENTER) / TAPER_WIDTH;
        // erfc(−6)/2 already rounds to 1.
        if x < -6.0 {
            1.0
        } else {
            0.5 * libm::erfc(x)
        }
    }

    /// Tapered kernel value.
    pub fn eval_tapered(&self, u: f64, h: f64) -> f64 {
        self.eval(u) * self.taper(u, h)
    }

    /// Largest product `u = t·s` that a log-step `h` resolves.
    pub fn resolved_product(&self, h: f64) -> f64 {
        let b = &self.backend;
        let d = b.euclidean_dim as f64;
        (RESOLVED_PHASE * d / (2.0 * PI * b.character_scale.abs() * h)).powf(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(id: FieldId) -> CharacterKernel {
        CharacterKernel::new(FieldBackend::new(id))
    }

    #[test]
    fn value_at_origin_is_one() {
        for id in FieldId::ALL {
            assert!((k(id).eval(0.0) - 1.0).abs() < 1e-15);
            let v = k(id).eval(1e-12);
            assert!((v - 1.0).abs() < 1e-3, "{id}: {v}");
        }
    }

    #[test]
    fn real_half() {
        assert!((k(FieldId::R).eval(0.5) + 1.0).abs() < 1e-15);
    }

    /// Sphere average in ℝ^d via the 1-D polar integral over the angle θ to
    /// a fixed axis, weight sin^{d−2}θ, with Simpson's rule.
    fn polar_average(id: FieldId, u: f64) -> f64 {
        let b = FieldBackend::new(id);
        let d = b.euclidean_dim as i32;
        let a = 2.0 * PI * b.character_scale.abs() * u.powf(1.0 / d as f64);
        let n = 4000;
        let h = PI / n as f64;
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..=n {
            let th = i as f64 * h;
            let c = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            let w = c * th.sin().powi(d - 2);
            num += w * (a * th.cos()).cos();
            den += w;
        }
        num / den
    }

    #[test]
    fn matches_polar_sphere_average() {
        for id in [FieldId::C, FieldId::H] {
            for u in [0.05, 0.3, 1.0, 2.7] {
                let got = k(id).eval(u);
                let want = polar_average(id, u);
                assert!((got - want).abs() < 1e-10, "{id} u={u}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn quaternion_monte_carlo_at_one() {
        // Random unit quaternions x, y: λ(xy) = exp(2πi·2Re(xy)).
        use rand::{Rng, SeedableRng};
        use rand_distr::StandardNormal;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 200_000;
        let mut acc = 0.0;
        let mut acc2 = 0.0;
        for _ in 0..n {
            let x = unit4(&mut rng);
            let y = unit4(&mut rng);
            let p = crate::field::quaternion_mul(x, y);
            let v = (2.0 * PI * 2.0 * p[0]).cos();
            acc += v;
            acc2 += v * v;
        }
        let mean = acc / n as f64;
        let sd = ((acc2 / n as f64 - mean * mean) / n as f64).sqrt();
        let want = k(FieldId::H).eval(1.0);
        assert!((mean - want).abs() < 4.0 * sd, "{mean} vs {want} (sd {sd})");

        fn unit4(rng: &mut impl Rng) -> [f64; 4] {
            let v: [f64; 4] = core::array::from_fn(|_| rng.sample(StandardNormal));
            let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            [v[0] / r, v[1] / r, v[2] / r, v[3] / r]
        }
    }

    #[test]
    fn taper_is_flat_on_resolved_products() {
        for id in FieldId::ALL {
            let kk = k(id);
            let h = 0.01;
            let u = kk.resolved_product(h);
            assert!((kk.phase_rate(u) * h - RESOLVED_PHASE).abs() < 1e-12);
            assert_eq!(kk.taper(u, h), 1.0);
            assert!(kk.taper(u * 2f64.powi(kk.backend.euclidean_dim as i32 * 2), h) < 1e-12);
        }
    }
}

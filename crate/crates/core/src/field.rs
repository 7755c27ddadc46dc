//! Normalization conventions for the archimedean local fields.
//!
//! Every field is viewed as `ℝ^d` (`d = 1, 2, 4`). The module of `g` is the
//! factor `|det L_g|` by which left multiplication scales Lebesgue measure,
//! which for a euclidean radius `r` equals `r^d`. The additive Haar measure
//! `dx` is the self-dual one for the character `λ`, and the multiplicative
//! measure is `d*x = dx / (ω m(x))` with `ω` chosen so that a module annulus
//! `{t₁ ≤ m ≤ t₂}` has multiplicative measure `log(t₂/t₁)`.

use core::f64::consts::PI;
use core::fmt;

use nalgebra::{DMatrix, Matrix4};

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldId {
    R,
    C,
    H,
}

impl FieldId {
    pub const ALL: [FieldId; 3] = [FieldId::R, FieldId::C, FieldId::H];

    pub fn parse(name: &str) -> Option<FieldId> {
        match name {
            "R" | "r" => Some(FieldId::R),
            "C" | "c" => Some(FieldId::C),
            "H" | "h" => Some(FieldId::H),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldId::R => "R",
            FieldId::C => "C",
            FieldId::H => "H",
        }
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldBackend {
    pub field_id: FieldId,
    pub euclidean_dim: usize,
    /// Additive measure of the shell `{t ≤ m(x) ≤ t + dt}` per `dt`.
    pub omega: f64,
    /// Self-dual Haar measure in units of Lebesgue measure.
    pub measure_factor: f64,
    /// `λ(x) = exp(2πi · character_scale · ⟨x̄, y⟩)`-style frequency multiplier.
    /// Negative for ℝ, where `λ(x) = exp(-2πix)`.
    pub character_scale: f64,
}

impl FieldBackend {
    pub fn new(field_id: FieldId) -> Self {
        match field_id {
            FieldId::R => FieldBackend {
                field_id,
                euclidean_dim: 1,
                omega: 2.0,
                measure_factor: 1.0,
                character_scale: -1.0,
            },
            FieldId::C => FieldBackend {
                field_id,
                euclidean_dim: 2,
                omega: 2.0 * PI,
                measure_factor: 2.0,
                character_scale: 2.0,
            },
            FieldId::H => FieldBackend {
                field_id,
                euclidean_dim: 4,
                omega: 2.0 * PI * PI,
                measure_factor: 4.0,
                character_scale: 2.0,
            },
        }
    }

    /// Volume of the euclidean unit ball in `ℝ^d`.
    pub fn unit_ball_volume(&self) -> f64 {
        match self.euclidean_dim {
            1 => 2.0,
            2 => PI,
            _ => PI * PI / 2.0,
        }
    }

    /// `ω` recomputed from the measure normalization: the additive measure of
    /// `{m ≤ t}` is `measure_factor · vol(B₁) · t`.
    pub fn omega_from_measure(&self) -> f64 {
        self.measure_factor * self.unit_ball_volume()
    }

    /// Euclidean radius of a point of module `t`.
    pub fn radius_of_module(&self, t: f64) -> f64 {
        t.powf(1.0 / self.euclidean_dim as f64)
    }

    /// The variable `q = r²` in which smooth radial functions are power series.
    pub fn q_of_module(&self, t: f64) -> f64 {
        t.powf(2.0 / self.euclidean_dim as f64)
    }

    pub fn module_of_matrix(&self, g: &[f64]) -> Result<f64> {
        module_of_matrix(self.field_id, g)
    }
}

pub fn make_backend(field_id: FieldId) -> FieldBackend {
    FieldBackend::new(field_id)
}

/// Hamilton product of quaternions given as `(a, b, c, d) = a + bi + cj + dk`.
pub fn quaternion_mul(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

/// Matrix of `x ↦ g·x` in euclidean coordinates.
pub fn left_multiplication_matrix(field_id: FieldId, g: &[f64]) -> Result<DMatrix<f64>> {
    let dim = FieldBackend::new(field_id).euclidean_dim;
    if g.len() != dim {
        return Err(Error::Domain(alloc::format!(
            "field {field_id} expects {dim} coordinates, got {}",
            g.len()
        )));
    }
    Ok(match field_id {
        FieldId::R => DMatrix::from_element(1, 1, g[0]),
        FieldId::C => DMatrix::from_row_slice(2, 2, &[g[0], -g[1], g[1], g[0]]),
        FieldId::H => {
            let p = [g[0], g[1], g[2], g[3]];
            let mut cols = [[0.0; 4]; 4];
            for (k, col) in cols.iter_mut().enumerate() {
                let mut e = [0.0; 4];
                e[k] = 1.0;
                *col = quaternion_mul(p, e);
            }
            let m = Matrix4::from_fn(|i, j| cols[j][i]);
            DMatrix::from_fn(4, 4, |i, j| m[(i, j)])
        }
    })
}

/// `|det L_g|`; for ℍ this is the square of the reduced norm.
pub fn module_of_matrix(field_id: FieldId, g: &[f64]) -> Result<f64> {
    if g.iter().all(|&x| x == 0.0) {
        return Err(Error::Domain("module of zero is undefined".into()));
    }
    let m = left_multiplication_matrix(field_id, g)?;
    Ok(m.determinant().abs())
}

/// Multiplicative measure of `{t₁ ≤ m ≤ t₂}`.
pub fn annulus_measure(t1: f64, t2: f64) -> Result<f64> {
    if !(t1 > 0.0) || !(t2 >= t1) || !t2.is_finite() {
        return Err(Error::Domain(alloc::format!(
            "annulus requires 0 < t1 <= t2, got ({t1}, {t2})"
        )));
    }
    Ok((t2 / t1).ln())
}

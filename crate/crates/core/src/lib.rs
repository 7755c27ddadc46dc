//! Numerical laboratory for the cutoff trace `Tr(P̃_Λ P_Λ U_f)` over the
//! archimedean local fields ℝ, ℂ and ℍ.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure numerics:
//!
//! - [`field`]: per-field normalizations (module, sphere constant, self-dual measure).
//! - [`grid`]: log-uniform radial grids with additive and multiplicative weights.
//! - [`kernel`] and [`fourier`]: the radial Fourier transform as a dense quadrature
//!   kernel, plus the signed full-line transform for ℝ.
//! - [`operator`]: weighted dense integral operators (cutoffs, translations, `U_f`,
//!   Hilbert–Schmidt pairings, traces, singular values).
//! - [`trace`]: the three routes to `T(Λ)`, the conductor term and the tail bound.
//! - [`sandbox`]: finite-group shadows of the commutant and self-adjointness arguments.
//!
//! IO, configuration and the command line live in the `loctrace` crate.

#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod field;
pub mod fourier;
pub mod grid;
pub mod kernel;
pub mod linalg;
pub mod operator;
pub mod sandbox;
pub mod test_function;
pub mod trace;

pub use error::{Error, Result};
pub use field::{FieldBackend, FieldId};
pub use fourier::{FourierOperator, FullLineFourier};
pub use grid::{RadialFunction, RadialGrid, SignedGrid};
pub use kernel::CharacterKernel;
pub use operator::{KernelOperator, Picture};
pub use test_function::TestFunction;
pub use trace::{ConductorValue, ConnesTrace, TraceReport};

pub use num_complex::Complex64;

//! Finite shadows of the commutant and self-adjointness arguments.
//!
//! Function spaces carry counting measure, so operators are plain matrices.
//! These checks verify the proof mechanisms (commutants, multipliers, polar
//! decomposition, resolvent normality); the unbounded statements themselves
//! have no finite-dimensional content.

pub mod commutant;
pub mod group;
pub mod mechanisms;

pub use commutant::{commutant_of_characters, commutant_of_set, Commutant};
pub use group::{abelian_groups_up_to, FiniteGroup};
pub use mechanisms::{multiplier_of, polar_decompose, resolvent_normality_check, ResolventReport};

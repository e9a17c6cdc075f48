//! Effective bounds and certified solution sets for S-unit values of simple
//! linear recurrences over the rational function field ℚ(x) ⊂ ℂ(x).

pub mod error;
pub mod exactalg;
pub mod places;
pub mod recurrence;
pub mod bounds;
pub mod solver;
pub mod cli;

pub use error::{Error, Hypothesis, Result};
pub use exactalg::{Poly, RatFunc};

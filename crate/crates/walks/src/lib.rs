//! Exact and numeric machinery for counting lattice walks with arbitrary
//! steps confined to an orthant: step-set census, orbit computations,
//! excursion-exponent classification, closed-form solutions and their
//! verification against dynamic programming, recurrence guessing, and
//! numeric asymptotics.

pub mod algebra;
pub mod asympt;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod exponent;
pub mod guess;
pub mod model;
pub mod orbit;
pub mod solve;

pub use error::{Error, Result};

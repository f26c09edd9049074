//! Closed-form bound states, su(1,1) generator realizations and point canonical
//! transformations for the radial oscillator, Morse and Coulomb problems, with
//! constant or position-dependent mass.
//!
//! Units: `ħ = 1`, `m₀ = 1/2`, so the constant-mass kinetic term is `-d²/dq²`.

pub mod algebra;
pub mod error;
pub mod invariants;
pub mod jet;
pub mod measures;
pub mod operators;
pub mod oracle;
pub mod pct;
pub mod report;
pub mod specfun;
pub mod systems;

pub use error::{Error, Result};

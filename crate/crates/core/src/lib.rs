//! Emission and absorption of cavity photons by accelerated two-level atoms.
//!
//! All quantities are dimensionless with c = ħ = 1; frequencies are usually
//! quoted in units of the acceleration frequency α = a/c.

pub mod amplitudes;
pub mod field_dynamics;
pub mod specfun;
pub mod trajectory;

pub use num_complex::Complex64;

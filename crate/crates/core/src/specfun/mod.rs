//! Special functions and quadrature used by the amplitude backends.

mod bessel;
mod erf;
mod gamma;
mod quadrature;

use num_complex::Complex64;
use thiserror::Error;

pub use bessel::{bessel_j, bessel_j_orders, bessel_k_complex_order, MAX_J_ARGUMENT, MAX_J_ORDER, MAX_K_IMAG_ORDER};
pub use erf::{erf_complex, faddeeva_upper};
pub use gamma::{
    gamma_complex, ln_gamma_complex, lower_incomplete_gamma, upper_incomplete_gamma, upper_incomplete_gamma_cf,
};
pub use quadrature::{oscillatory_quadrature, oscillatory_quadrature_split, QuadratureResult, QuadratureSpec, PERIOD_FRACTION};

pub type ComplexValue = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("pole of the gamma function at {z}")]
    Pole { z: Complex64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{routine} did not converge after {iterations} iterations")]
    NonConvergence { routine: &'static str, iterations: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("argument out of supported range: {0}")]
    OutOfRange(String),
}

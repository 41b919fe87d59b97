//! Rate coefficients for constant-velocity and oscillating atoms.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{AmplitudeError, AtomFieldParams};
use crate::field_dynamics::RateSet;
use crate::specfun::{bessel_j_orders, MAX_J_ORDER};
use crate::trajectory::{doppler_frequency, Direction, ModeGeometry, Worldline};

/// Detunings below this fraction of `|ν'| + ω` use the resonant limit.
const RESONANCE_FRACTION: f64 = 1e-10;
/// Relative tolerance of the time-of-flight consistency check.
const TOF_TOLERANCE: f64 = 1e-9;
/// Extra Bessel orders required beyond `k_z A`.
pub const PARAMETRIC_MARGIN: f64 = 20.0;

/// `g² |1 - e^{-iΔT}|² / Δ²`, with the limit `g²T²` at `Δ = 0`.
fn transit_factor(g: f64, detuning: f64, t: f64, scale: f64) -> f64 {
    if detuning.abs() < RESONANCE_FRACTION * scale {
        return g * g * t * t;
    }
    let s = (0.5 * detuning * t).sin();
    g * g * 4.0 * s * s / (detuning * detuning)
}

/// Rates of an atom that sees the field at frequency `nu_prime` for a time
/// `t`: `R1` uses the detuning `ν' - ω`, `R2` uses `ν' + ω`. `nu_prime` may
/// be negative (anomalous Doppler regime).
pub fn interference_rates(g: f64, nu_prime: f64, omega: f64, t: f64) -> Result<RateSet, AmplitudeError> {
    if !(t > 0.0 && t.is_finite()) || !nu_prime.is_finite() || !(g >= 0.0) || !(omega > 0.0) {
        return Err(AmplitudeError::InvalidParams(format!(
            "need T > 0, g >= 0, omega > 0 (got T = {t}, g = {g}, omega = {omega})"
        )));
    }
    let scale = nu_prime.abs() + omega;
    let r1 = transit_factor(g, nu_prime - omega, t, scale);
    let r2 = transit_factor(g, nu_prime + omega, t, scale);
    Ok(RateSet::new(r1, r2, 1.0, 0.0)?)
}

/// Rates for an atom crossing the cavity at constant velocity, with the
/// relativistic Doppler frequency `ν' = ν√((ν - k·v)/(ν + k·v))`.
pub fn constant_velocity_rates(
    p: &AtomFieldParams,
    nu: f64,
    v_over_c: f64,
    t: f64,
    direction: Direction,
) -> Result<RateSet, AmplitudeError> {
    let w = Worldline::constant_velocity(v_over_c)?;
    let m = ModeGeometry::new(nu, direction)?;
    let nu_prime = doppler_frequency(&w, &m, 0.0)?;
    interference_rates(p.g, nu_prime, p.omega, t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeOfFlight {
    pub t: f64,
    /// Whether `(ν - kv - ω)T = 2n₂π` also holds and `T > 0`.
    pub consistent: bool,
}

/// Transit time nulling absorption while keeping emission maximal:
/// `(ν - kv + ω)T = (2n₁ - 1)π` fixes `T`; `(ν - kv - ω)T = 2n₂π` is checked.
pub fn time_of_flight_tuning(nu: f64, k_dot_v: f64, omega: f64, n1: i64, n2: i64) -> TimeOfFlight {
    let t = (2 * n1 - 1) as f64 * PI / (nu - k_dot_v + omega);
    let target = 2.0 * n2 as f64 * PI;
    let residual = (nu - k_dot_v - omega) * t - target;
    let consistent = t.is_finite() && t > 0.0 && residual.abs() <= TOF_TOLERANCE * target.abs().max(1.0);
    TimeOfFlight { t, consistent }
}

/// Largest relative velocity spread `Δv/v` that keeps the tuning:
/// `(v/4c)(λ/L)`.
pub fn monochromaticity_bound(v_over_c: f64, lambda_over_length: f64) -> f64 {
    v_over_c.abs() / 4.0 * lambda_over_length
}

/// Rates for an atom oscillating along the cavity axis,
/// `R_{1,2} = |Σ_p g J_p(k_z A) / (pω₀ ∓ ω + ν + iγ)|²`, summed over
/// `|p| <= p_max`.
pub fn parametric_rates(
    p: &AtomFieldParams,
    nu: f64,
    omega0: f64,
    kz_a: f64,
    gamma_decay: f64,
    p_max: usize,
) -> Result<RateSet, AmplitudeError> {
    if !(gamma_decay > 0.0) || !(omega0 > 0.0) || !(nu > 0.0) || !kz_a.is_finite() {
        return Err(AmplitudeError::InvalidParams(format!(
            "need gamma > 0, omega0 > 0, nu > 0 (got gamma = {gamma_decay}, omega0 = {omega0}, nu = {nu})"
        )));
    }
    if (p_max as f64) < kz_a.abs() + PARAMETRIC_MARGIN || p_max > MAX_J_ORDER {
        return Err(AmplitudeError::InvalidParams(format!(
            "P_max must lie in [|kzA| + {PARAMETRIC_MARGIN}, {MAX_J_ORDER}] (got {p_max} for kzA = {kz_a})"
        )));
    }
    let j = bessel_j_orders(p_max, kz_a)?;
    let mut s1 = Complex64::new(0.0, 0.0);
    let mut s2 = Complex64::new(0.0, 0.0);
    for order in -(p_max as i64)..=(p_max as i64) {
        let n = order.unsigned_abs() as usize;
        let jp = if order < 0 && n % 2 == 1 { -j[n] } else { j[n] };
        let shift = order as f64 * omega0 + nu;
        s1 += jp / Complex64::new(shift - p.omega, gamma_decay);
        s2 += jp / Complex64::new(shift + p.omega, gamma_decay);
    }
    Ok(RateSet::new(p.g * p.g * s1.norm_sqr(), p.g * p.g * s2.norm_sqr(), 1.0, 0.0)?)
}

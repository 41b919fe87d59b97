//! Emission and absorption amplitudes for an atom crossing a single-mode
//! cavity, plus the closed-form ratios and rate formulas built on them.
//!
//! Conventions: c = 1; the absorption amplitude of a co-propagating mode is
//!
//! `I_a = ∫ exp[i(ν/α)(e^{-ατ} - 1) + iωτ - ατ] dτ`
//!
//! over the flight window, `I_e` is the same with `ω → -ω`, and a
//! counter-propagating mode is obtained by replacing every α by `-α`.

mod angular;
mod integral;
mod rates;
mod stationary;

use num_complex::Complex64;
use thiserror::Error;

use crate::field_dynamics::DynamicsError;
use crate::specfun::SpecFunError;
use crate::trajectory::{ModeGeometry, TrajectoryError};

pub use angular::{
    angular_amplitude, angular_integral, angular_integral_regularized, angular_stationary_ratio, AngularBackend,
    AngularStationary,
};
pub use integral::{free_space_amplitude, window_integral, window_integral_with_spec};
pub use rates::{
    constant_velocity_rates, interference_rates, monochromaticity_bound, parametric_rates, time_of_flight_tuning,
    TimeOfFlight, PARAMETRIC_MARGIN,
};
pub use stationary::{stationary_phase_components, StationaryComponents};

/// `ν/α` and `ω/α` below this are outside the stationary-phase regime.
pub const ASYMPTOTIC_THRESHOLD: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AmplitudeError {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("backend/window mismatch: {0}")]
    BackendMismatch(String),
    #[error("quadrature did not converge (estimate {value}, error {error:.3e})")]
    QuadratureNonConvergence { value: Complex64, error: f64 },
    #[error("no stationary point: {0}")]
    NoStationaryPoint(String),
    #[error("domain error: {0}")]
    Domain(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomFieldParams {
    /// Atomic transition frequency ω.
    pub omega: f64,
    /// Coupling frequency g.
    pub g: f64,
    /// Acceleration frequency α = a/c (0 when not accelerated).
    pub alpha: f64,
}

impl AtomFieldParams {
    pub fn new(omega: f64, g: f64, alpha: f64) -> Result<Self, AmplitudeError> {
        if !(omega > 0.0 && omega.is_finite()) || !(g >= 0.0 && g.is_finite()) || !(alpha >= 0.0 && alpha.is_finite())
        {
            return Err(AmplitudeError::InvalidParams(format!(
                "need omega > 0, g >= 0, alpha >= 0 (got omega = {omega}, g = {g}, alpha = {alpha})"
            )));
        }
        Ok(AtomFieldParams { omega, g, alpha })
    }

    fn require_acceleration(&self) -> Result<f64, AmplitudeError> {
        if self.alpha > 0.0 {
            Ok(self.alpha)
        } else {
            Err(AmplitudeError::InvalidParams("accelerated amplitudes need alpha > 0".into()))
        }
    }
}

/// Proper-time interval spent in the cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightWindow {
    pub tau_i: f64,
    pub tau_e: f64,
    pub infinite: bool,
}

impl FlightWindow {
    /// `tau_i == tau_e` is allowed and gives vanishing amplitudes.
    pub fn finite(tau_i: f64, tau_e: f64) -> Result<Self, AmplitudeError> {
        if !(tau_i.is_finite() && tau_e.is_finite()) || tau_i > tau_e {
            return Err(AmplitudeError::InvalidParams(format!(
                "window needs finite tau_i <= tau_e (got [{tau_i}, {tau_e}])"
            )));
        }
        Ok(FlightWindow { tau_i, tau_e, infinite: false })
    }

    pub fn infinite() -> Self {
        FlightWindow { tau_i: f64::NEG_INFINITY, tau_e: f64::INFINITY, infinite: true }
    }

    pub fn duration(&self) -> f64 {
        self.tau_e - self.tau_i
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Quadrature,
    IncompleteGamma,
    StationaryPhase,
    FreeSpace,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Quadrature => "quadrature",
            Backend::IncompleteGamma => "incomplete-gamma",
            Backend::StationaryPhase => "stationary-phase",
            Backend::FreeSpace => "free-space",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quadrature" => Ok(Backend::Quadrature),
            "incomplete-gamma" | "incomplete_gamma" => Ok(Backend::IncompleteGamma),
            "stationary-phase" | "stationary_phase" => Ok(Backend::StationaryPhase),
            "free-space" | "free_space" => Ok(Backend::FreeSpace),
            other => Err(format!("unknown backend '{other}'")),
        }
    }
}

/// Conditions under which a result is usable but less trustworthy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmplitudeWarning {
    /// `ν/α` or `ω/α` below [`ASYMPTOTIC_THRESHOLD`].
    NotAsymptotic { nu_over_alpha: f64, omega_over_alpha: f64 },
    /// The stationary point lies outside the window and was left out.
    StationaryOmitted { tau_s: f64 },
    /// `|ν - ω| <= 3√(αω)`: the erf line profile was used. `boundary_resonance`
    /// marks `|ν - ω| ≈ √(αω)`, the case the literature calls "exactly at
    /// resonance" although the stationary point only reaches the window edge
    /// at `ν = ω`.
    ResonanceBand { detuning_over_width: f64, boundary_resonance: bool },
    /// Stationary point too close to the threshold `ω = k⊥`.
    NearThreshold,
    /// The second stationary point also lies in the window with a weight
    /// that is not negligible.
    CompanionStationaryPoint { weight: f64 },
    /// The angular stationary point lies outside the window.
    StationaryOutsideWindow { tau_s: f64 },
}

/// Boundary and stationary parts whose sum is the stationary-phase total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeComponents {
    pub boundary: Complex64,
    pub stationary: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeResult {
    pub i_a: Complex64,
    pub i_e: Complex64,
    pub backend: Backend,
    pub err_estimate: f64,
    /// Parts of `i_a`, present for the stationary-phase backend.
    pub components: Option<AmplitudeComponents>,
    pub warnings: Vec<AmplitudeWarning>,
}

impl AmplitudeResult {
    pub fn abs_rate(&self) -> f64 {
        self.i_a.norm_sqr()
    }

    pub fn emi_rate(&self) -> f64 {
        self.i_e.norm_sqr()
    }

    /// `|I_e / I_a|²`.
    pub fn ratio(&self) -> f64 {
        self.emi_rate() / self.abs_rate()
    }
}

/// Absorption and emission amplitudes with the chosen backend.
pub fn amplitude(
    p: &AtomFieldParams,
    w: &FlightWindow,
    m: &ModeGeometry,
    backend: Backend,
) -> Result<AmplitudeResult, AmplitudeError> {
    let alpha = p.require_acceleration()?;
    let sign = m.direction.alpha_sign()?;
    let beta = sign * alpha;
    match backend {
        Backend::FreeSpace => {
            if !w.infinite {
                return Err(AmplitudeError::BackendMismatch("free-space needs an infinite window".into()));
            }
            let i_a = free_space_amplitude(m.nu, p.omega, beta)?;
            let i_e = free_space_amplitude(m.nu, -p.omega, beta)?;
            let err_estimate = 1e-13 * (i_a.norm() + i_e.norm());
            Ok(AmplitudeResult { i_a, i_e, backend, err_estimate, components: None, warnings: Vec::new() })
        }
        Backend::Quadrature | Backend::IncompleteGamma => {
            if w.infinite {
                return Err(AmplitudeError::BackendMismatch(format!(
                    "{} needs a finite window; use free-space for the infinite one",
                    backend.name()
                )));
            }
            let (i_a, ea) = window_integral(m.nu, p.omega, beta, w.tau_i, w.tau_e, backend)?;
            let (i_e, ee) = window_integral(m.nu, -p.omega, beta, w.tau_i, w.tau_e, backend)?;
            Ok(AmplitudeResult { i_a, i_e, backend, err_estimate: ea + ee, components: None, warnings: Vec::new() })
        }
        Backend::StationaryPhase => stationary::stationary_phase_amplitude(p, w, m),
    }
}

/// `|I_e/I_a|²` for an infinite window: `e^{-2πω/α}`.
pub fn ratio_free_space(omega_over_alpha: f64) -> Result<f64, AmplitudeError> {
    if !(omega_over_alpha > 0.0) {
        return Err(AmplitudeError::InvalidParams(format!("omega/alpha must be > 0, got {omega_over_alpha}")));
    }
    Ok((-2.0 * std::f64::consts::PI * omega_over_alpha).exp())
}

/// Large-frequency emission/absorption ratio of a finite window starting at
/// `τ = 0`: `αν²/(2πω(ν+ω)²)`, or `α/(2πω)` at resonance.
pub fn asymptotic_ratio(nu: f64, omega: f64, alpha: f64, at_resonance: bool) -> Result<f64, AmplitudeError> {
    if !(nu > 0.0 && omega > 0.0 && alpha > 0.0) {
        return Err(AmplitudeError::InvalidParams(format!(
            "need nu, omega, alpha > 0 (got {nu}, {omega}, {alpha})"
        )));
    }
    let base = alpha / (2.0 * std::f64::consts::PI * omega);
    if at_resonance {
        Ok(base)
    } else {
        let x = nu / (nu + omega);
        Ok(base * x * x)
    }
}

/// Effective temperature of the cavity and of the Unruh bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTemperature {
    /// `ħω / k_B T = ln(2πω/α)` for sudden switching at the cavity edges.
    pub hbar_omega_over_kt: f64,
    /// `k_B T_u / (ħα) = 1/(2π)`.
    pub unruh: f64,
}

pub fn effective_temperature(omega: f64, alpha: f64) -> Result<EffectiveTemperature, AmplitudeError> {
    let x = 2.0 * std::f64::consts::PI * omega / alpha;
    if !(omega > 0.0 && alpha > 0.0) || !(x > 1.0) {
        return Err(AmplitudeError::Domain(format!(
            "effective temperature needs 2*pi*omega > alpha > 0 (got omega = {omega}, alpha = {alpha})"
        )));
    }
    Ok(EffectiveTemperature { hbar_omega_over_kt: x.ln(), unruh: 1.0 / (2.0 * std::f64::consts::PI) })
}

//! Stationary-phase asymptotics of the co-propagating amplitudes.
//!
//! With `φ(τ) = (ν/α)(e^{-ατ} - 1) + Ωτ` and `F(τ) = e^{-ατ}`, the absorption
//! integral has one stationary point `τ_s = ln(ν/ω)/α` (for `ν > ω`); the
//! emission integral has none and is carried by the window edges.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::{
    AmplitudeComponents, AmplitudeError, AmplitudeResult, AmplitudeWarning, AtomFieldParams, Backend, FlightWindow,
    ASYMPTOTIC_THRESHOLD,
};
use crate::specfun::erf_complex;
use crate::trajectory::{Direction, ModeGeometry};

/// Denominators below this fraction of `ν + |Ω|` count as vanishing.
const SINGULAR_FRACTION: f64 = 1e-10;
/// Half-width, in units of `√(αω)`, of the band handled by the erf profile.
const PROFILE_BAND: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryComponents {
    /// Integration-by-parts term of `I_a` from both window edges.
    pub boundary: Complex64,
    /// Leading stationary-point term of `I_a`, `None` when `τ_s` is outside
    /// the window.
    pub stationary: Option<Complex64>,
    /// Stationary term weighted by the erf line profile, valid for any detuning.
    pub profile: Complex64,
    /// Edge term of the emission amplitude `I_e`.
    pub emission_boundary: Complex64,
    pub tau_s: f64,
    pub warnings: Vec<AmplitudeWarning>,
}

struct Setup {
    nu: f64,
    omega: f64,
    alpha: f64,
    tau_i: f64,
    tau_e: f64,
}

fn setup(p: &AtomFieldParams, w: &FlightWindow, m: &ModeGeometry) -> Result<Setup, AmplitudeError> {
    let alpha = p.require_acceleration()?;
    if m.direction != Direction::Co {
        return Err(AmplitudeError::BackendMismatch("stationary phase is implemented for co-propagating modes".into()));
    }
    if w.infinite {
        return Err(AmplitudeError::BackendMismatch("stationary phase needs a finite window".into()));
    }
    if w.tau_i != 0.0 {
        return Err(AmplitudeError::BackendMismatch(format!(
            "stationary phase uses a window starting at tau = 0 (got tau_i = {})",
            w.tau_i
        )));
    }
    Ok(Setup { nu: m.nu, omega: p.omega, alpha, tau_i: w.tau_i, tau_e: w.tau_e })
}

/// One edge term `F e^{iφ} / (iφ')` at `tau`, or zero when `φ'` vanishes there.
fn edge_term(s: &Setup, big_omega: f64, tau: f64) -> Complex64 {
    let e = (-s.alpha * tau).exp();
    let phase = s.nu / s.alpha * (e - 1.0) + big_omega * tau;
    let rate = big_omega - s.nu * e;
    if rate.abs() < SINGULAR_FRACTION * (s.nu + big_omega.abs()) {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(e, phase) / Complex64::new(0.0, rate)
}

fn boundary(s: &Setup, big_omega: f64) -> Complex64 {
    edge_term(s, big_omega, s.tau_e) - edge_term(s, big_omega, s.tau_i)
}

/// Leading stationary-point term `√(2π/αω)(ω/ν) e^{i[(ω-ν)/α + (ω/α)ln(ν/ω) + π/4]}`.
fn stationary_term(s: &Setup) -> Complex64 {
    let (nu, om, al) = (s.nu, s.omega, s.alpha);
    let phase = (om - nu) / al + om / al * (nu / om).ln() + FRAC_PI_4;
    Complex64::from_polar((2.0 * PI / (al * om)).sqrt() * om / nu, phase)
}

fn line_profile(s: &Setup, stationary: Complex64) -> Complex64 {
    let z = (s.nu - s.omega) / (2.0 * s.alpha * s.omega).sqrt() * Complex64::from_polar(1.0, -FRAC_PI_4);
    0.5 * stationary * (1.0 + erf_complex(z))
}

fn asymptotic_warning(s: &Setup) -> Option<AmplitudeWarning> {
    let (nu_a, om_a) = (s.nu / s.alpha, s.omega / s.alpha);
    (nu_a < ASYMPTOTIC_THRESHOLD || om_a < ASYMPTOTIC_THRESHOLD)
        .then_some(AmplitudeWarning::NotAsymptotic { nu_over_alpha: nu_a, omega_over_alpha: om_a })
}

/// Boundary, stationary and line-profile parts of the absorption amplitude.
pub fn stationary_phase_components(
    p: &AtomFieldParams,
    w: &FlightWindow,
    m: &ModeGeometry,
) -> Result<StationaryComponents, AmplitudeError> {
    let s = setup(p, w, m)?;
    let tau_s = (s.nu / s.omega).ln() / s.alpha;
    let leading = stationary_term(&s);
    let inside = tau_s > s.tau_i && tau_s < s.tau_e;
    let mut warnings: Vec<_> = asymptotic_warning(&s).into_iter().collect();
    if !inside {
        warnings.push(AmplitudeWarning::StationaryOmitted { tau_s });
    }
    Ok(StationaryComponents {
        boundary: boundary(&s, s.omega),
        stationary: inside.then_some(leading),
        profile: line_profile(&s, leading),
        emission_boundary: boundary(&s, -s.omega),
        tau_s,
        warnings,
    })
}

pub(super) fn stationary_phase_amplitude(
    p: &AtomFieldParams,
    w: &FlightWindow,
    m: &ModeGeometry,
) -> Result<AmplitudeResult, AmplitudeError> {
    let s = setup(p, w, m)?;
    let mut warnings: Vec<_> = asymptotic_warning(&s).into_iter().collect();
    let width = (s.alpha * s.omega).sqrt();
    let detuning = s.nu - s.omega;
    let tau_s = (s.nu / s.omega).ln() / s.alpha;
    let leading = stationary_term(&s);

    let components = if detuning.abs() <= PROFILE_BAND * width {
        warnings.push(AmplitudeWarning::ResonanceBand {
            detuning_over_width: detuning / width,
            boundary_resonance: detuning.abs() <= width,
        });
        // the lower edge is absorbed into the profile
        AmplitudeComponents { boundary: edge_term(&s, s.omega, s.tau_e), stationary: line_profile(&s, leading) }
    } else if tau_s > s.tau_i && tau_s < s.tau_e {
        // first correction in α/ω from the curvature of F and φ
        let corrected = leading * Complex64::new(1.0, s.alpha / (12.0 * s.omega));
        AmplitudeComponents { boundary: boundary(&s, s.omega), stationary: corrected }
    } else {
        warnings.push(AmplitudeWarning::StationaryOmitted { tau_s });
        AmplitudeComponents { boundary: boundary(&s, s.omega), stationary: Complex64::new(0.0, 0.0) }
    };

    let i_a = components.boundary + components.stationary;
    let i_e = boundary(&s, -s.omega);
    let err_estimate = s.alpha / s.omega * i_a.norm() + s.alpha / s.nu * i_e.norm();
    Ok(AmplitudeResult {
        i_a,
        i_e,
        backend: Backend::StationaryPhase,
        err_estimate,
        components: Some(components),
        warnings,
    })
}

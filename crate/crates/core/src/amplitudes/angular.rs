//! Amplitudes for modes propagating at an angle to the acceleration.
//!
//! With `ζ = k_z/k`, the angular amplitude is `I_k(Ω) = ζ e^{iντ_i} J(Ω)` where
//!
//! `J(Ω) = e^{iνζ/α} ∫ exp[i(ν/α)(sinh ατ - ζ cosh ατ) - iΩτ - ατ] dτ`.
//!
//! `I_k(ω)` plays the role of the absorption amplitude and `I_k(-ω)` of the
//! emission amplitude. For an infinite window the phase `e^{iντ_i}` is dropped.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::{AmplitudeError, AmplitudeResult, AmplitudeWarning, AtomFieldParams, Backend, FlightWindow};
use crate::specfun::{bessel_k_complex_order, oscillatory_quadrature, QuadratureSpec};
use crate::trajectory::ModeGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularBackend {
    Quadrature,
    InfiniteClosedForm,
}

/// Weight above which the second stationary point is reported.
const COMPANION_WEIGHT: f64 = 0.05;
/// Root separation, in stationary-point widths, below which the
/// stationary-point formula is flagged.
const THRESHOLD_SEPARATION: f64 = 3.0;

fn check(nu: f64, alpha: f64, zeta: f64) -> Result<(), AmplitudeError> {
    if !(nu > 0.0) || !(alpha > 0.0) || !(zeta.abs() <= 1.0) {
        return Err(AmplitudeError::InvalidParams(format!(
            "need nu > 0, alpha > 0, |kz/k| <= 1 (got nu = {nu}, alpha = {alpha}, kz/k = {zeta})"
        )));
    }
    Ok(())
}

/// Rapidity offset and transverse argument: `tanh η = ζ`, `κ⊥ = ν√(1-ζ²)/α`.
fn closed_form_setup(nu: f64, alpha: f64, zeta: f64) -> Result<(f64, f64), AmplitudeError> {
    if zeta.abs() >= 1.0 {
        return Err(AmplitudeError::InvalidParams(
            "the infinite-window angular closed form is singular at |kz/k| = 1".into(),
        ));
    }
    Ok((zeta.atanh(), nu * (1.0 - zeta * zeta).sqrt() / alpha))
}

/// `e^{iνζ/α} e^{-ξη} / α`, common to both infinite-window evaluations.
fn infinite_prefactor(nu: f64, alpha: f64, zeta: f64, xi: Complex64, eta: f64) -> Complex64 {
    Complex64::new(0.0, nu * zeta / alpha).exp() * (-xi * eta).exp() / alpha
}

/// The reduced integral `J(Ω)` (no `ζ` or `e^{iντ_i}` factor).
pub fn angular_integral(
    nu: f64,
    big_omega: f64,
    alpha: f64,
    zeta: f64,
    w: &FlightWindow,
    backend: AngularBackend,
) -> Result<(Complex64, f64), AmplitudeError> {
    check(nu, alpha, zeta)?;
    match (backend, w.infinite) {
        (AngularBackend::InfiniteClosedForm, true) => {
            let (eta, kappa) = closed_form_setup(nu, alpha, zeta)?;
            let xi = Complex64::new(1.0, big_omega / alpha);
            let k = bessel_k_complex_order(xi, kappa)?;
            let rot = (Complex64::new(0.0, -FRAC_PI_2) * xi).exp();
            let value = infinite_prefactor(nu, alpha, zeta, xi, eta) * 2.0 * rot * k;
            Ok((value, 1e-12 * value.norm()))
        }
        (AngularBackend::Quadrature, false) => finite_quadrature(nu, big_omega, alpha, zeta, w.tau_i, w.tau_e),
        (AngularBackend::InfiniteClosedForm, false) => {
            Err(AmplitudeError::BackendMismatch("closed form needs an infinite window".into()))
        }
        (AngularBackend::Quadrature, true) => Err(AmplitudeError::BackendMismatch(
            "infinite windows use the closed form or the regularized quadrature".into(),
        )),
    }
}

fn finite_quadrature(
    nu: f64,
    big_omega: f64,
    alpha: f64,
    zeta: f64,
    tau_i: f64,
    tau_e: f64,
) -> Result<(Complex64, f64), AmplitudeError> {
    let r = nu / alpha;
    let f = |tau: f64| {
        let x = alpha * tau;
        let phase = r * (x.sinh() - zeta * x.cosh()) - big_omega * tau;
        Complex64::from_polar((-x).exp(), phase)
    };
    let rate = |tau: f64| {
        let x = alpha * tau;
        nu * (x.cosh() - zeta * x.sinh()) - big_omega
    };
    let spec = QuadratureSpec { rel_tol: 1e-11, abs_tol: 0.0, max_subdivisions: 4_000_000 };
    let res = oscillatory_quadrature(f, tau_i, tau_e, &spec, Some(&rate))?;
    if !res.converged {
        return Err(AmplitudeError::QuadratureNonConvergence { value: res.value, error: res.error });
    }
    let phase = Complex64::new(0.0, nu * zeta / alpha).exp();
    Ok((phase * res.value, res.error))
}

/// Infinite-window `J(Ω)` by adaptive quadrature without Bessel functions.
///
/// After the shift `ατ = y + η` the integral is `∫ exp(iκ⊥ sinh y - ξy) dy`,
/// which converges only conditionally on the real line. It is evaluated on
/// the parallel line `Im y = π/4`, where the integrand decays
/// double-exponentially in both directions.
pub fn angular_integral_regularized(
    nu: f64,
    big_omega: f64,
    alpha: f64,
    zeta: f64,
) -> Result<(Complex64, f64), AmplitudeError> {
    check(nu, alpha, zeta)?;
    let (eta, kappa) = closed_form_setup(nu, alpha, zeta)?;
    let xi = Complex64::new(1.0, big_omega / alpha);
    let eps = FRAC_PI_4;
    let (se, ce) = eps.sin_cos();

    let log_env = |s: f64| -kappa * se * s.cosh() - xi.re * s + xi.im * eps;
    let s_peak = (-xi.re / (kappa * se)).asinh();
    let cutoff = log_env(s_peak) - 45.0;
    let mut hi = s_peak.max(0.0) + 1.0;
    while log_env(hi) > cutoff {
        hi += 0.5;
    }
    let mut lo = s_peak.min(0.0) - 1.0;
    while log_env(lo) > cutoff {
        lo -= 0.5;
    }

    let f = |s: f64| {
        let y = Complex64::new(s, eps);
        // sinh(s + iε) = sinh s cos ε + i cosh s sin ε
        let sh = Complex64::new(s.sinh() * ce, s.cosh() * se);
        (Complex64::new(0.0, kappa) * sh - xi * y).exp()
    };
    let rate = |s: f64| kappa * ce * s.cosh() - xi.im;
    let spec = QuadratureSpec { rel_tol: 1e-12, abs_tol: 0.0, max_subdivisions: 1_000_000 };
    let res = oscillatory_quadrature(f, lo, hi, &spec, Some(&rate))?;
    if !res.converged {
        return Err(AmplitudeError::QuadratureNonConvergence { value: res.value, error: res.error });
    }
    let pre = infinite_prefactor(nu, alpha, zeta, xi, eta);
    Ok((pre * res.value, pre.norm() * res.error))
}

/// `I_k(ω)` (in `i_a`) and `I_k(-ω)` (in `i_e`) for the mode `m`.
pub fn angular_amplitude(
    p: &AtomFieldParams,
    w: &FlightWindow,
    m: &ModeGeometry,
    backend: AngularBackend,
) -> Result<AmplitudeResult, AmplitudeError> {
    let alpha = p.require_acceleration()?;
    let zeta = m.direction.kz_over_k();
    let (ja, ea) = angular_integral(m.nu, p.omega, alpha, zeta, w, backend)?;
    let (je, ee) = angular_integral(m.nu, -p.omega, alpha, zeta, w, backend)?;
    let entry = if w.infinite { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, m.nu * w.tau_i).exp() };
    let pre = zeta * entry;
    Ok(AmplitudeResult {
        i_a: pre * ja,
        i_e: pre * je,
        backend: if w.infinite { Backend::FreeSpace } else { Backend::Quadrature },
        err_estimate: zeta.abs() * (ea + ee),
        components: None,
        warnings: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngularStationary {
    /// `|I_k(-ω)|² / |I_k(ω)|²` from the stationary point.
    pub ratio: f64,
    pub tau_s: f64,
    pub warnings: Vec<AmplitudeWarning>,
}

/// Emission/absorption ratio for an oblique mode when `I_k(ω)` is dominated
/// by the stationary point `cosh ατ_s - ζ sinh ατ_s = ω/ν` and `I_k(-ω)` by
/// the entry edge, `|I_k(-ω)|² ≈ 1/(ν+ω)²`.
pub fn angular_stationary_ratio(
    p: &AtomFieldParams,
    m: &ModeGeometry,
    w: &FlightWindow,
) -> Result<AngularStationary, AmplitudeError> {
    let alpha = p.require_acceleration()?;
    let (nu, omega) = (m.nu, p.omega);
    let zeta = m.direction.kz_over_k();
    let k_perp = m.k_perp();
    if omega <= k_perp {
        return Err(AmplitudeError::NoStationaryPoint(format!(
            "omega = {omega} does not exceed k_perp = {k_perp}"
        )));
    }
    let root = ((omega - k_perp) * (omega + k_perp)).sqrt();
    // e^{ατ_s} at the root that connects to the co-propagating one
    let e_minus = nu * (1.0 + zeta) / (omega + root);
    if !(e_minus > 0.0) {
        return Err(AmplitudeError::NoStationaryPoint("stationary point at tau = -infinity".into()));
    }
    let tau_s = e_minus.ln() / alpha;
    let ratio = alpha * root * e_minus * e_minus / (2.0 * PI * (nu + omega) * (nu + omega));

    let mut warnings = Vec::new();
    if !w.infinite && !(tau_s > w.tau_i && tau_s < w.tau_e) {
        warnings.push(AmplitudeWarning::StationaryOutsideWindow { tau_s });
    }
    if k_perp > 0.0 {
        let separation = 2.0 * ((omega + root) / k_perp).ln();
        if separation * (root / alpha).sqrt() < THRESHOLD_SEPARATION {
            warnings.push(AmplitudeWarning::NearThreshold);
        }
        let tau_plus = tau_s + separation / alpha;
        let weight = (-separation).exp();
        let companion_inside = w.infinite || (tau_plus > w.tau_i && tau_plus < w.tau_e);
        if companion_inside && weight > COMPANION_WEIGHT {
            warnings.push(AmplitudeWarning::CompanionStationaryPoint { weight });
        }
    }
    Ok(AngularStationary { ratio, tau_s, warnings })
}

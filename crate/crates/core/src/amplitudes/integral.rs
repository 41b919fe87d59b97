//! Finite-window amplitude integrals (quadrature and incomplete gamma) and
//! the infinite-window closed form.

use num_complex::Complex64;

use super::{AmplitudeError, Backend};
use crate::specfun::{gamma_complex, oscillatory_quadrature_split, upper_incomplete_gamma, QuadratureSpec};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Absolute error accepted per unit length of the `x` interval. The error
/// estimate of each Gauss-Kronrod panel never drops below ~50ε times its
/// `∫|f|`, and `∫|f|` here is the interval length, which reaches e^{10} for
/// counter-propagating windows while the integral stays of order `1/ν`.
const ROUNDOFF_FLOOR: f64 = 100.0 * f64::EPSILON;

/// 2π split into a double and its remainder, for argument reduction.
const TWO_PI_HI: f64 = 6.283_185_307_179_586;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

/// `r·x mod 2π` to about one ulp of 2π even when `r·x` is ~1e6.
fn reduced_product(r: f64, x: f64) -> f64 {
    let hi = r * x;
    let lo = r.mul_add(x, -hi);
    let k = (hi / TWO_PI_HI).round();
    (-k).mul_add(TWO_PI_HI, hi) - k * TWO_PI_LO + lo
}

fn default_spec() -> QuadratureSpec {
    QuadratureSpec { rel_tol: 1e-11, abs_tol: 0.0, max_subdivisions: 4_000_000 }
}

/// `∫_{τi}^{τe} exp[i(ν/β)(e^{-βτ} - 1) + iΩτ - βτ] dτ` and an error estimate.
///
/// `beta = ±α` selects co- or counter-propagation; `big_omega = ±ω` selects
/// absorption or emission.
pub fn window_integral(
    nu: f64,
    big_omega: f64,
    beta: f64,
    tau_i: f64,
    tau_e: f64,
    backend: Backend,
) -> Result<(Complex64, f64), AmplitudeError> {
    window_integral_with_spec(nu, big_omega, beta, tau_i, tau_e, backend, &default_spec())
}

pub fn window_integral_with_spec(
    nu: f64,
    big_omega: f64,
    beta: f64,
    tau_i: f64,
    tau_e: f64,
    backend: Backend,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64), AmplitudeError> {
    if !(nu > 0.0) || beta == 0.0 || !beta.is_finite() || !big_omega.is_finite() {
        return Err(AmplitudeError::InvalidParams(format!(
            "need nu > 0 and finite nonzero beta (got nu = {nu}, beta = {beta}, Omega = {big_omega})"
        )));
    }
    if !(tau_i.is_finite() && tau_e.is_finite()) || tau_i > tau_e {
        return Err(AmplitudeError::InvalidParams(format!("bad window [{tau_i}, {tau_e}]")));
    }
    if tau_i == tau_e {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    match backend {
        Backend::Quadrature => quadrature(nu, big_omega, beta, tau_i, tau_e, spec),
        Backend::IncompleteGamma => incomplete_gamma(nu, big_omega, beta, tau_i, tau_e),
        other => Err(AmplitudeError::BackendMismatch(format!("{} is not a window-integral backend", other.name()))),
    }
}

/// Integrates in `x = e^{-βτ}`, where the integrand has unit modulus:
/// `I = (1/|β|) ∫ exp(i[(ν/β)(x - 1) - (Ω/β) ln x]) dx` between the images of
/// the window edges. The large linear phase is reduced exactly at each panel
/// origin and added to the small in-panel part, so neither the rounding of
/// `e^{-βτ}` nor that of the node positions costs accuracy at ~1e6 radians.
fn quadrature(
    nu: f64,
    big_omega: f64,
    beta: f64,
    tau_i: f64,
    tau_e: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64), AmplitudeError> {
    let r = nu / beta;
    let s = big_omega / beta;
    let x_i = (-beta * tau_i).exp();
    let x_e = (-beta * tau_e).exp();
    let (lo, hi) = if x_i < x_e { (x_i, x_e) } else { (x_e, x_i) };
    let f = |origin: f64, offset: f64| {
        let x = origin + offset;
        let linear = reduced_product(r, origin) + reduced_product(r, offset);
        Complex64::from_polar(1.0, linear - r - s * x.ln())
    };
    let rate = |x: f64| r - s / x;
    let spec = QuadratureSpec { abs_tol: spec.abs_tol.max(ROUNDOFF_FLOOR * (hi - lo)), ..*spec };
    let res = oscillatory_quadrature_split(f, lo, hi, &spec, Some(&rate))?;
    if !res.converged {
        return Err(AmplitudeError::QuadratureNonConvergence { value: res.value, error: res.error });
    }
    let scale = 1.0 / beta.abs();
    Ok((scale * res.value, scale * res.error))
}

fn incomplete_gamma(
    nu: f64,
    big_omega: f64,
    beta: f64,
    tau_i: f64,
    tau_e: f64,
) -> Result<(Complex64, f64), AmplitudeError> {
    // x = c e^{-βτ} maps the integrand onto e^{-x} x^{ξ-1}
    let c = Complex64::new(0.0, -nu / beta);
    let xi = Complex64::new(1.0, -big_omega / beta);
    let prefactor = (I / nu) * Complex64::new(0.0, -nu / beta).exp() * c.powc(1.0 - xi);
    let g_e = upper_incomplete_gamma(xi, c * (-beta * tau_e).exp())?;
    let g_i = upper_incomplete_gamma(xi, c * (-beta * tau_i).exp())?;
    let value = prefactor * (g_e - g_i);
    let err = 1e-12 * prefactor.norm() * (g_e.norm() + g_i.norm());
    Ok((value, err))
}

/// Infinite-window amplitude
/// `(i/ν) e^{-iν/α} (α/ν)^{-iΩ/α} e^{πΩ/2α} Γ(1 - iΩ/α)` for a co-propagating
/// mode; the counter-propagating amplitude is its complex conjugate.
pub fn free_space_amplitude(nu: f64, big_omega: f64, beta: f64) -> Result<Complex64, AmplitudeError> {
    if !(nu > 0.0) || beta == 0.0 || !beta.is_finite() || !big_omega.is_finite() {
        return Err(AmplitudeError::InvalidParams(format!(
            "need nu > 0 and finite nonzero beta (got nu = {nu}, beta = {beta})"
        )));
    }
    let alpha = beta.abs();
    let w = big_omega / alpha;
    let gamma = gamma_complex(Complex64::new(1.0, -w))?;
    // (α/ν)^{-iw} = e^{-iw ln(α/ν)}
    let phase = -nu / alpha - w * (alpha / nu).ln();
    let modulus = (0.5 * std::f64::consts::PI * w).exp() / nu;
    let co = I * Complex64::from_polar(modulus, phase) * gamma;
    Ok(if beta > 0.0 { co } else { co.conj() })
}

//! Complete and incomplete gamma functions of complex argument.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::SpecFunError;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `|u|` below which the incomplete gamma uses the power series.
pub const SERIES_RADIUS: f64 = 8.0;

const MAX_ITERATIONS: usize = 20_000;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `ln Γ(z)` on some branch; only `exp` of the result is meaningful.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64, SpecFunError> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecFunError::NonFinite("ln_gamma argument"));
    }
    if is_nonpositive_integer(z) {
        return Err(SpecFunError::Pole { z });
    }
    if z.re < 0.5 {
        // reflection: Γ(z) Γ(1 - z) = π / sin(πz)
        let s = (z * PI).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

/// Γ(z) by the Lanczos approximation (g = 7, nine terms), with reflection
/// for `Re z < 1/2`.
pub fn gamma_complex(z: Complex64) -> Result<Complex64, SpecFunError> {
    let g = ln_gamma_complex(z)?.exp();
    if !(g.re.is_finite() && g.im.is_finite()) {
        return Err(SpecFunError::NonFinite("gamma overflow"));
    }
    Ok(g)
}

fn check_incomplete_args(xi: Complex64, u: Complex64) -> Result<(), SpecFunError> {
    if !(xi.re.is_finite() && xi.im.is_finite() && u.re.is_finite() && u.im.is_finite()) {
        return Err(SpecFunError::NonFinite("incomplete gamma argument"));
    }
    if !(xi.re > 0.0 && xi.re <= 2.0) {
        return Err(SpecFunError::InvalidArgument(format!(
            "incomplete gamma needs 0 < Re xi <= 2, got xi = {xi}"
        )));
    }
    if u.re < 0.0 {
        return Err(SpecFunError::InvalidArgument(format!(
            "incomplete gamma needs |arg u| <= pi/2, got u = {u}"
        )));
    }
    Ok(())
}

/// `u^xi e^{-u}`, with the two factors kept apart so that a huge `Im u`
/// does not lose phase bits when added to `xi ln u`.
fn prefactor(xi: Complex64, u: Complex64) -> Complex64 {
    (xi * u.ln()).exp() * (-u).exp()
}

/// Σ u^n / (xi (xi+1) ... (xi+n)), the Kummer-type series of γ(xi, u) e^u u^{-xi}.
fn lower_series_sum(xi: Complex64, u: Complex64) -> Result<Complex64, SpecFunError> {
    let mut term = 1.0 / xi;
    let mut sum = term;
    for n in 1..MAX_ITERATIONS {
        term *= u / (xi + n as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NonConvergence { routine: "incomplete gamma series", iterations: MAX_ITERATIONS })
}

/// Legendre continued fraction for Γ(xi, u) e^u u^{-xi}, modified Lentz.
fn upper_continued_fraction(xi: Complex64, u: Complex64) -> Result<Complex64, SpecFunError> {
    const TINY: f64 = 1e-300;
    let guard = |v: Complex64| if v.norm() < TINY { Complex64::new(TINY, 0.0) } else { v };

    let mut b = u + 1.0 - xi;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / guard(b);
    let mut h = d;
    for i in 1..MAX_ITERATIONS {
        let an = -(i as f64) * (i as f64 - xi);
        b += 2.0;
        d = 1.0 / guard(an * d + b);
        c = guard(b + an / c);
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok(h);
        }
    }
    Err(SpecFunError::NonConvergence { routine: "incomplete gamma continued fraction", iterations: MAX_ITERATIONS })
}

/// Lower incomplete gamma γ(xi, u) = ∫_0^u e^{-x} x^{xi-1} dx by its power series.
pub fn lower_incomplete_gamma(xi: Complex64, u: Complex64) -> Result<Complex64, SpecFunError> {
    check_incomplete_args(xi, u)?;
    if u == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(prefactor(xi, u) * lower_series_sum(xi, u)?)
}

/// Upper incomplete gamma Γ(xi, u) = ∫_u^∞ e^{-x} x^{xi-1} dx, principal branch.
///
/// Valid for `0 < Re xi <= 2` and `Re u >= 0` (the purely imaginary `u` of
/// the amplitude integrals included). Uses `Γ(xi) - γ(xi, u)` for
/// `|u| < max(8, |xi|)` and the continued fraction beyond; the continued
/// fraction stalls when `|u|` is small compared with `|Im xi|`, where the
/// series is still clean.
pub fn upper_incomplete_gamma(xi: Complex64, u: Complex64) -> Result<Complex64, SpecFunError> {
    check_incomplete_args(xi, u)?;
    if u == Complex64::new(0.0, 0.0) {
        return gamma_complex(xi);
    }
    let value = if u.norm() < SERIES_RADIUS.max(xi.norm()) {
        gamma_complex(xi)? - prefactor(xi, u) * lower_series_sum(xi, u)?
    } else {
        prefactor(xi, u) * upper_continued_fraction(xi, u)?
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(SpecFunError::NonFinite("incomplete gamma"));
    }
    Ok(value)
}

/// Continued-fraction branch alone, for cross-checks against the series.
pub fn upper_incomplete_gamma_cf(xi: Complex64, u: Complex64) -> Result<Complex64, SpecFunError> {
    check_incomplete_args(xi, u)?;
    Ok(prefactor(xi, u) * upper_continued_fraction(xi, u)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_at_one_and_integers() {
        assert!(rel(gamma_complex(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel(gamma_complex(c(5.0, 0.0)).unwrap(), c(24.0, 0.0)) < 1e-14);
        assert!(rel(gamma_complex(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma_complex(c(-0.5, 0.0)).unwrap(), c(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn poles_rejected() {
        for z in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_complex(c(z, 0.0)), Err(SpecFunError::Pole { .. })));
        }
        assert!(gamma_complex(c(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn conjugate_product_identity() {
        // Γ(1+3i) Γ(1-3i) = 3π / sinh(3π)
        let p = gamma_complex(c(1.0, 3.0)).unwrap() * gamma_complex(c(1.0, -3.0)).unwrap();
        let expect = 3.0 * PI / (3.0 * PI).sinh();
        assert!((p.re - expect).abs() / expect < 1e-12);
        assert!(p.im.abs() < 1e-12 * expect);
    }

    #[test]
    fn upper_gamma_trivial_cases() {
        let v = upper_incomplete_gamma(c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!(rel(v, c((-2.0f64).exp(), 0.0)) < 1e-14);
        let v = upper_incomplete_gamma(c(1.0, 1.0), c(0.0, 0.0)).unwrap();
        assert!(rel(v, gamma_complex(c(1.0, 1.0)).unwrap()) < 1e-15);
        // Γ(1, u) = e^{-u} on both branches
        for u in [c(0.0, -3.0), c(0.0, 15.0), c(2.0, -30.0)] {
            let v = upper_incomplete_gamma(c(1.0, 0.0), u).unwrap();
            assert!(rel(v, (-u).exp()) < 1e-13, "u = {u}");
        }
    }

    #[test]
    fn argument_range_enforced() {
        assert!(upper_incomplete_gamma(c(2.5, 0.0), c(1.0, 0.0)).is_err());
        assert!(upper_incomplete_gamma(c(0.0, 1.0), c(1.0, 0.0)).is_err());
        assert!(upper_incomplete_gamma(c(1.0, 0.0), c(-1.0, 0.5)).is_err());
    }
}

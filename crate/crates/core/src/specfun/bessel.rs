//! Bessel functions: `J_p(x)` of integer order and the Macdonald function
//! `K_ξ(x)` of complex order.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::SpecFunError;

pub const MAX_J_ORDER: usize = 200;
pub const MAX_J_ARGUMENT: f64 = 500.0;
pub const MAX_K_IMAG_ORDER: f64 = 100.0;

/// `J_0(x), ..., J_pmax(x)` from one downward (Miller) recurrence,
/// normalized by `J_0 + 2 Σ J_2k = 1`.
pub fn bessel_j_orders(pmax: usize, x: f64) -> Result<Vec<f64>, SpecFunError> {
    if pmax > MAX_J_ORDER || !(x.abs() <= MAX_J_ARGUMENT) {
        return Err(SpecFunError::OutOfRange(format!(
            "J_p(x) supports |p| <= {MAX_J_ORDER}, |x| <= {MAX_J_ARGUMENT} (got p = {pmax}, x = {x})"
        )));
    }
    let mut out = vec![0.0; pmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    let ax = x.abs();
    let top = pmax.max(ax.ceil() as usize);
    let start = 2 * ((top + 30 + (50.0 * top as f64).sqrt() as usize) / 2);

    const BIG: f64 = 1e250;
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-30; // J_k
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / ax * cur - next;
        next = cur;
        cur = prev;
        // cur now holds J_{k-1}
        let order = k - 1;
        if order <= pmax {
            out[order] = cur;
        }
        if order % 2 == 0 && order > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > BIG {
            cur /= BIG;
            next /= BIG;
            norm /= BIG;
            for v in out.iter_mut() {
                *v /= BIG;
            }
        }
    }
    norm += cur;
    for (p, v) in out.iter_mut().enumerate() {
        *v /= norm;
        if x < 0.0 && p % 2 == 1 {
            *v = -*v;
        }
    }
    Ok(out)
}

/// `J_p(x)` for integer `p`, using `J_{-p} = (-1)^p J_p`.
pub fn bessel_j(p: i32, x: f64) -> Result<f64, SpecFunError> {
    let n = p.unsigned_abs() as usize;
    let v = bessel_j_orders(n, x)?[n];
    Ok(if p < 0 && n % 2 == 1 { -v } else { v })
}

/// Macdonald function `K_ξ(x) = ∫_0^∞ e^{-x cosh t} cosh(ξt) dt` for real
/// `x > 0` and complex order.
///
/// The integral is written as `½∫_{-∞}^{∞} e^{-x cosh t - ξt} dt` and moved
/// onto the line `Im t = θ`, with θ placed at the saddle of the exponent
/// (capped inside the strip `|θ| < π/2`). There the integrand decays
/// double-exponentially and carries little cancellation, so the trapezoidal
/// rule with step halving converges geometrically.
pub fn bessel_k_complex_order(xi: Complex64, x: f64) -> Result<Complex64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::InvalidArgument(format!("K_xi(x) needs x > 0, got {x}")));
    }
    if !(xi.im.abs() <= MAX_K_IMAG_ORDER) || !xi.re.is_finite() {
        return Err(SpecFunError::InvalidArgument(format!(
            "K_xi(x) supports |Im xi| <= {MAX_K_IMAG_ORDER}, got xi = {xi}"
        )));
    }
    let a = xi.re;
    let b = xi.im;
    let theta = -b.signum() * (b.abs() / x).min(1.0).asin().min(FRAC_PI_2 - 0.1);
    let (sin_t, cos_t) = theta.sin_cos();
    let shift = Complex64::new(0.0, theta);

    // log-modulus of the integrand along the shifted line
    let log_env = |s: f64| -x * cos_t * s.cosh() - a * s + b * theta;
    let s_peak = (-a / (x * cos_t)).asinh();
    let peak = log_env(s_peak);
    let cutoff = peak - 45.0;
    let mut hi = s_peak.max(0.0) + 0.5;
    while log_env(hi) > cutoff {
        hi += 0.5;
    }
    let mut lo = s_peak.min(0.0) - 0.5;
    while log_env(lo) > cutoff {
        lo -= 0.5;
    }

    let f = |s: f64| {
        let t = Complex64::new(s, 0.0) + shift;
        // cosh(s + iθ) = cosh s cos θ + i sinh s sin θ
        let ch = Complex64::new(s.cosh() * cos_t, s.sinh() * sin_t);
        (-x * ch - xi * t).exp()
    };

    let mut h = 0.25;
    let mut prev: Option<Complex64> = None;
    for _ in 0..14 {
        let k_lo = (lo / h).floor() as i64;
        let k_hi = (hi / h).ceil() as i64;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in k_lo..=k_hi {
            sum += f(k as f64 * h);
        }
        let value = 0.5 * h * sum;
        if let Some(p) = prev {
            if (value - p).norm() <= 1e-13 * value.norm() {
                if !(value.re.is_finite() && value.im.is_finite()) {
                    return Err(SpecFunError::NonFinite("bessel K"));
                }
                return Ok(value);
            }
        }
        prev = Some(value);
        h *= 0.5;
    }
    Err(SpecFunError::NonConvergence { routine: "bessel K trapezoid", iterations: 14 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn j_at_origin_and_parity() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
        let j1 = bessel_j(1, 1.7).unwrap();
        assert_eq!(bessel_j(-1, 1.7).unwrap(), -j1);
        assert_eq!(bessel_j(-2, 1.7).unwrap(), bessel_j(2, 1.7).unwrap());
        assert!((bessel_j(1, -1.7).unwrap() + j1).abs() < 1e-16);
    }

    #[test]
    fn j_reference_values() {
        // J_0(1), J_1(2.5), J_5(10), J_0(100)
        let cases = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (1, 2.5, 0.497_094_102_464_274_4),
            (5, 10.0, -0.234_061_528_186_793_5),
            (0, 100.0, 0.019_985_850_304_223_122),
        ];
        for (p, x, want) in cases {
            let got = bessel_j(p, x).unwrap();
            assert!((got - want).abs() < 1e-14, "J_{p}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn j_range_checked() {
        assert!(bessel_j(201, 1.0).is_err());
        assert!(bessel_j(0, 500.5).is_err());
        assert!(bessel_j(200, 500.0).is_ok());
    }

    #[test]
    fn k_half_order_closed_form() {
        let k = bessel_k_complex_order(Complex64::new(0.5, 0.0), 2.0).unwrap();
        let want = (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!((k.re - want).abs() < 1e-14 * want);
        assert!(k.im.abs() < 1e-15);
    }

    #[test]
    fn k_conjugation() {
        let a = bessel_k_complex_order(Complex64::new(1.0, 5.0), 3.0).unwrap();
        let b = bessel_k_complex_order(Complex64::new(1.0, -5.0), 3.0).unwrap();
        assert!((a - b.conj()).norm() <= 1e-15 * a.norm());
    }

    #[test]
    fn k_rejects_bad_arguments() {
        assert!(bessel_k_complex_order(Complex64::new(1.0, 0.0), 0.0).is_err());
        assert!(bessel_k_complex_order(Complex64::new(1.0, 0.0), -1.0).is_err());
        assert!(bessel_k_complex_order(Complex64::new(1.0, 101.0), 1.0).is_err());
    }
}

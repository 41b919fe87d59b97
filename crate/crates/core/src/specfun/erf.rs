//! Complex error function via the Faddeeva function `w(z) = e^{-z²} erfc(-iz)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

/// Terms in Weideman's rational expansion of `w`.
const WEIDEMAN_N: usize = 40;
/// Below this modulus `erf` is summed from its Maclaurin series.
const SERIES_RADIUS: f64 = 2.5;
/// Above this modulus `w` uses the Laplace continued fraction.
const CF_RADIUS: f64 = 8.0;
const CF_TERMS: usize = 60;

struct Weideman {
    l: f64,
    // polynomial coefficients, highest degree first
    coef: Vec<f64>,
}

fn weideman() -> &'static Weideman {
    static TABLE: OnceLock<Weideman> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = WEIDEMAN_N;
        let m = 2 * n;
        let m2 = 2 * m;
        let l = (n as f64 / 2f64.sqrt()).sqrt();

        // samples f(θ_k) for k = -m+1 .. m-1, prefixed by a zero, then fftshift
        let mut f = vec![0.0; m2];
        for (idx, k) in (-(m as i64) + 1..m as i64).enumerate() {
            let theta = k as f64 * PI / m as f64;
            let t = l * (theta / 2.0).tan();
            f[idx + 1] = (-t * t).exp() * (l * l + t * t);
        }
        let shifted: Vec<f64> = (0..m2).map(|i| f[(i + m2 / 2) % m2]).collect();

        // real part of the DFT, only the first n + 1 coefficients are needed
        let mut a = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut s = 0.0;
            for (k, &v) in shifted.iter().enumerate() {
                s += v * (2.0 * PI * (j * k) as f64 / m2 as f64).cos();
            }
            a.push(s / m2 as f64);
        }
        let coef: Vec<f64> = a[1..=n].iter().rev().copied().collect();
        Weideman { l, coef }
    })
}

fn faddeeva_weideman(z: Complex64) -> Complex64 {
    let tab = weideman();
    let iz = Complex64::new(0.0, 1.0) * z;
    let denom = tab.l - iz;
    let zz = (tab.l + iz) / denom;
    let p = tab.coef.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * zz + c);
    2.0 * p / (denom * denom) + (1.0 / PI.sqrt()) / denom
}

fn faddeeva_continued_fraction(z: Complex64) -> Complex64 {
    let mut r = z;
    for k in (1..=CF_TERMS).rev() {
        r = z - (k as f64 / 2.0) / r;
    }
    Complex64::new(0.0, 1.0 / PI.sqrt()) / r
}

/// Faddeeva function for `Im z >= 0`.
pub fn faddeeva_upper(z: Complex64) -> Complex64 {
    debug_assert!(z.im >= 0.0);
    if z.norm() >= CF_RADIUS {
        faddeeva_continued_fraction(z)
    } else {
        faddeeva_weideman(z)
    }
}

fn erf_series(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut power = z;
    let mut sum = z;
    for n in 1..200 {
        power *= -z2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * (2.0 / PI.sqrt())
}

/// Complex error function, total on finite arguments.
pub fn erf_complex(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        return erf_series(z);
    }
    if z.re < 0.0 {
        return -erf_complex(-z);
    }
    // Re z >= 0 puts iz in the closed upper half plane
    let iz = Complex64::new(-z.im, z.re);
    Complex64::new(1.0, 0.0) - (-z * z).exp() * faddeeva_upper(iz)
}

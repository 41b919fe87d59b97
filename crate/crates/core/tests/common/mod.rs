//! Independent reference integrators for the integration tests. Nothing
//! here calls into the library's numerics.
#![allow(dead_code)]

use std::f64::consts::PI;

use accelrad::Complex64;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite Gauss-Legendre: `panels` equal panels of `order` nodes each.
pub fn gl_composite<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize, order: usize) -> Complex64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let mut part = Complex64::new(0.0, 0.0);
        for (xi, wi) in x.iter().zip(&w) {
            part += *wi * f(mid + 0.5 * h * xi);
        }
        sum += part * (0.5 * h);
    }
    sum
}

pub fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, n: usize) -> Complex64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let c = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += c * f(a + i as f64 * h);
    }
    s * (h / 3.0)
}

/// Simpson's rule with the panel count doubled until three successive
/// estimates agree to `tol` (relative). Returns the last estimate and the
/// last change.
pub fn simpson_converged<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> (Complex64, f64) {
    let mut n = 256;
    let mut prev = simpson(&f, a, b, n);
    let mut agreements = 0;
    loop {
        n *= 2;
        let cur = simpson(&f, a, b, n);
        let change = (cur - prev).norm();
        if change <= tol * cur.norm().max(1e-300) {
            agreements += 1;
            if agreements == 3 {
                return (cur, change);
            }
        } else {
            agreements = 0;
        }
        assert!(n < 1 << 26, "Simpson oracle did not settle");
        prev = cur;
    }
}

/// `∫_{τi}^{τe} exp[i(ν/β)(e^{-βτ} - 1) + iΩτ - βτ] dτ` straight from the
/// definition, for modest total phase.
pub fn window_integral_oracle(nu: f64, big_omega: f64, beta: f64, ti: f64, te: f64) -> Complex64 {
    let f = |t: f64| {
        let e = (-beta * t).exp();
        Complex64::new(-beta * t, nu / beta * (e - 1.0) + big_omega * t).exp()
    };
    let phase_span = (nu / beta * ((-beta * te).exp() - (-beta * ti).exp())).abs() + big_omega.abs() * (te - ti);
    let panels = (phase_span * 2.0).ceil().max(200.0) as usize;
    gl_composite(f, ti, te, panels, 20)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

mod common;

use std::f64::consts::PI;

use accelrad::amplitudes::{
    angular_amplitude, angular_integral, angular_integral_regularized, angular_stationary_ratio, window_integral,
    AmplitudeError, AmplitudeWarning, AngularBackend, AtomFieldParams, Backend, FlightWindow,
};
use accelrad::specfun::bessel_k_complex_order;
use accelrad::trajectory::{Direction, ModeGeometry};
use accelrad::Complex64;
use common::{gl_composite, rel};

fn params(omega: f64) -> AtomFieldParams {
    AtomFieldParams::new(omega, 1.0, 1.0).unwrap()
}

fn oblique(nu: f64, zeta: f64) -> ModeGeometry {
    ModeGeometry::new(nu, Direction::Oblique(zeta)).unwrap()
}

/// `ζ e^{iντ_i} e^{iνζ} ∫ exp[iν(sinh τ - ζ cosh τ) - iΩτ - τ] dτ` with α = 1.
fn angular_oracle(nu: f64, big_omega: f64, zeta: f64, ti: f64, te: f64) -> Complex64 {
    let f = |t: f64| Complex64::new(-t, nu * (t.sinh() - zeta * t.cosh()) - big_omega * t).exp();
    let span = nu * ((te.sinh() - ti.sinh()).abs() + (te.cosh() - ti.cosh()).abs()) + big_omega.abs() * (te - ti);
    let panels = (2.0 * span).ceil().max(200.0) as usize;
    zeta * Complex64::new(0.0, nu * ti + nu * zeta).exp() * gl_composite(f, ti, te, panels, 20)
}

#[test]
fn finite_window_against_oracle() {
    let w = FlightWindow::finite(-0.5, 2.0).unwrap();
    let r = angular_amplitude(&params(2.0), &w, &oblique(5.0, 0.5), AngularBackend::Quadrature).unwrap();
    let oa = angular_oracle(5.0, 2.0, 0.5, -0.5, 2.0);
    let oe = angular_oracle(5.0, -2.0, 0.5, -0.5, 2.0);
    assert!(rel(r.i_a, oa) < 1e-9, "{} vs {oa}", r.i_a);
    assert!(rel(r.i_e, oe) < 1e-9, "{} vs {oe}", r.i_e);
}

#[test]
fn on_axis_reduces_to_co_propagating() {
    // at ζ = 1, J(Ω) is the complex conjugate of the co-propagating integral
    let w = FlightWindow::finite(0.0, 6.0).unwrap();
    for (nu, om) in [(4.0, 3.0), (20.0, 3.0), (2.0, 0.5)] {
        for big in [om, -om] {
            let (j, _) = angular_integral(nu, big, 1.0, 1.0, &w, AngularBackend::Quadrature).unwrap();
            let (i, _) = window_integral(nu, big, 1.0, 0.0, 6.0, Backend::IncompleteGamma).unwrap();
            assert!(rel(j, i.conj()) < 1e-9, "nu = {nu}, Omega = {big}");
        }
        let r = angular_amplitude(&params(om), &w, &oblique(nu, 1.0), AngularBackend::Quadrature).unwrap();
        let (ia, _) = window_integral(nu, om, 1.0, 0.0, 6.0, Backend::IncompleteGamma).unwrap();
        assert!((r.i_a.norm() - ia.norm()).abs() < 1e-9 * ia.norm());
    }
}

#[test]
fn infinite_window_closed_form_and_quadrature() {
    for zeta in [0.0, 0.3, 0.5, -0.7] {
        for (nu, om) in [(1.0, 1.0), (3.0, 2.0), (10.0, 0.5)] {
            for big in [om, -om] {
                let (k, _) =
                    angular_integral(nu, big, 1.0, zeta, &FlightWindow::infinite(), AngularBackend::InfiniteClosedForm)
                        .unwrap();
                let (q, _) = angular_integral_regularized(nu, big, 1.0, zeta).unwrap();
                assert!(rel(q, k) < 1e-9, "zeta = {zeta}, nu = {nu}, Omega = {big}");
            }
        }
    }
}

#[test]
fn transverse_infinite_ratio() {
    // kz = 0, ω/α = 2: ratio e^{-4π} |K_{1-2i}(ν)|² / |K_{1+2i}(ν)|²
    let nu = 3.0;
    let (ja, _) =
        angular_integral(nu, 2.0, 1.0, 0.0, &FlightWindow::infinite(), AngularBackend::InfiniteClosedForm).unwrap();
    let (je, _) =
        angular_integral(nu, -2.0, 1.0, 0.0, &FlightWindow::infinite(), AngularBackend::InfiniteClosedForm).unwrap();
    let km = bessel_k_complex_order(Complex64::new(1.0, -2.0), nu).unwrap();
    let kp = bessel_k_complex_order(Complex64::new(1.0, 2.0), nu).unwrap();
    let expect = (-4.0 * PI).exp() * km.norm_sqr() / kp.norm_sqr();
    let got = je.norm_sqr() / ja.norm_sqr();
    assert!((got - expect).abs() < 1e-10 * expect, "{got} vs {expect}");
    assert!((km.norm() / kp.norm() - 1.0).abs() < 1e-9);
}

#[test]
fn closed_form_rejects_axis_and_finite_window() {
    let fin = FlightWindow::finite(0.0, 1.0).unwrap();
    assert!(angular_integral(3.0, 1.0, 1.0, 1.0, &FlightWindow::infinite(), AngularBackend::InfiniteClosedForm).is_err());
    assert!(angular_integral(3.0, 1.0, 1.0, 0.5, &fin, AngularBackend::InfiniteClosedForm).is_err());
}

#[test]
fn stationary_ratio_against_quadrature() {
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    let p = params(10.0);
    let m = oblique(40.0, 0.995);
    let st = angular_stationary_ratio(&p, &m, &w).unwrap();
    let q = angular_amplitude(&p, &w, &m, AngularBackend::Quadrature).unwrap();
    let gap = (st.ratio - q.ratio()).abs() / q.ratio();
    assert!(gap <= 0.25, "stationary {} vs quadrature {} ({gap})", st.ratio, q.ratio());
}

#[test]
fn stationary_ratio_on_axis() {
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    let st = angular_stationary_ratio(&params(10.0), &oblique(40.0, 1.0), &w).unwrap();
    let expect = 40.0 * 40.0 / (2.0 * PI * 10.0 * 50.0 * 50.0);
    assert!((st.ratio - expect).abs() < 1e-12 * expect);
    assert!((st.tau_s - 4f64.ln()).abs() < 1e-12);
}

#[test]
fn stationary_ratio_needs_real_stationary_point() {
    // k⊥ = 40 √(1 - 0.64) = 24 > ω = 10
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    let err = angular_stationary_ratio(&params(10.0), &oblique(40.0, 0.8), &w).unwrap_err();
    assert!(matches!(err, AmplitudeError::NoStationaryPoint(_)));
}

#[test]
fn near_threshold_is_flagged() {
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    // k⊥ just below ω
    let zeta = (1.0 - (9.99f64 / 40.0).powi(2)).sqrt();
    let st = angular_stationary_ratio(&params(10.0), &oblique(40.0, zeta), &w).unwrap();
    assert!(st.warnings.contains(&AmplitudeWarning::NearThreshold));
}

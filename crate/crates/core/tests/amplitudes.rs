mod common;

use std::f64::consts::PI;

use accelrad::amplitudes::{
    amplitude, asymptotic_ratio, effective_temperature, free_space_amplitude, ratio_free_space,
    stationary_phase_components, window_integral, AmplitudeWarning, AtomFieldParams, Backend, FlightWindow,
};
use accelrad::trajectory::{Direction, ModeGeometry};
use accelrad::Complex64;
use common::{rel, window_integral_oracle};
use proptest::prelude::*;

fn params(omega: f64) -> AtomFieldParams {
    AtomFieldParams::new(omega, 1.0, 1.0).unwrap()
}

fn co(nu: f64) -> ModeGeometry {
    ModeGeometry::new(nu, Direction::Co).unwrap()
}

#[test]
fn empty_window_gives_zero() {
    let w = FlightWindow::finite(1.5, 1.5).unwrap();
    for b in [Backend::Quadrature, Backend::IncompleteGamma] {
        let r = amplitude(&params(3.0), &w, &co(7.0), b).unwrap();
        assert_eq!((r.i_a, r.i_e), (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    }
}

#[test]
fn free_space_unit_frequency() {
    let nu = 4.0;
    let r = amplitude(&params(1.0), &FlightWindow::infinite(), &co(nu), Backend::FreeSpace).unwrap();
    let abs = PI.exp() * PI / PI.sinh();
    let emi = 2.0 * PI / ((2.0 * PI).exp() - 1.0);
    assert!((r.abs_rate() * nu * nu - abs).abs() < 1e-12 * abs);
    assert!((r.abs_rate() * nu * nu - 6.295).abs() < 1e-3);
    assert!((r.emi_rate() * nu * nu - emi).abs() < 1e-12 * emi);
    assert!((r.ratio() - ratio_free_space(1.0).unwrap()).abs() < 1e-12 * r.ratio());
}

#[test]
fn finite_window_against_direct_oracle() {
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    let oracle_a = window_integral_oracle(20.0, 3.0, 1.0, 0.0, 10.0);
    let oracle_e = window_integral_oracle(20.0, -3.0, 1.0, 0.0, 10.0);
    for b in [Backend::Quadrature, Backend::IncompleteGamma] {
        let r = amplitude(&params(3.0), &w, &co(20.0), b).unwrap();
        assert!(rel(r.i_a, oracle_a) < 1e-9, "{b:?}: {} vs {oracle_a}", r.i_a);
        assert!(rel(r.i_e, oracle_e) < 1e-9, "{b:?}: {} vs {oracle_e}", r.i_e);
    }
    let q = amplitude(&params(3.0), &w, &co(20.0), Backend::Quadrature).unwrap();
    let g = amplitude(&params(3.0), &w, &co(20.0), Backend::IncompleteGamma).unwrap();
    assert!(rel(q.i_a, g.i_a) < 1e-8 && rel(q.i_e, g.i_e) < 1e-8);
}

#[test]
fn counter_propagating_against_oracle() {
    // a short window keeps the phase small enough for the direct oracle
    let w = FlightWindow::finite(-1.0, 2.0).unwrap();
    let m = ModeGeometry::new(5.0, Direction::Counter).unwrap();
    let oracle = window_integral_oracle(5.0, 2.0, -1.0, -1.0, 2.0);
    for b in [Backend::Quadrature, Backend::IncompleteGamma] {
        let r = amplitude(&params(2.0), &w, &m, b).unwrap();
        assert!(rel(r.i_a, oracle) < 1e-9, "{b:?}");
    }
}

#[test]
fn emission_is_absorption_at_negative_frequency() {
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    for (dir, beta) in [(Direction::Co, 1.0), (Direction::Counter, -1.0)] {
        let m = ModeGeometry::new(12.0, dir).unwrap();
        for b in [Backend::Quadrature, Backend::IncompleteGamma] {
            let r = amplitude(&params(3.0), &w, &m, b).unwrap();
            assert_eq!(r.i_e, window_integral(12.0, -3.0, beta, 0.0, 10.0, b).unwrap().0);
            assert_eq!(r.i_a, window_integral(12.0, 3.0, beta, 0.0, 10.0, b).unwrap().0);
        }
        let r = amplitude(&params(3.0), &FlightWindow::infinite(), &m, Backend::FreeSpace).unwrap();
        assert_eq!(r.i_e, free_space_amplitude(12.0, -3.0, beta).unwrap());
    }
    let r = amplitude(&params(20.0), &w, &co(60.0), Backend::StationaryPhase).unwrap();
    let c = stationary_phase_components(&params(20.0), &w, &co(60.0)).unwrap();
    assert_eq!(r.i_e, c.emission_boundary);
}

#[test]
fn backend_window_mismatches() {
    let fin = FlightWindow::finite(0.0, 10.0).unwrap();
    assert!(amplitude(&params(3.0), &fin, &co(5.0), Backend::FreeSpace).is_err());
    assert!(amplitude(&params(3.0), &FlightWindow::infinite(), &co(5.0), Backend::Quadrature).is_err());
    assert!(amplitude(&params(3.0), &FlightWindow::infinite(), &co(5.0), Backend::IncompleteGamma).is_err());
    let oblique = ModeGeometry::new(5.0, Direction::Oblique(0.3)).unwrap();
    assert!(amplitude(&params(3.0), &fin, &oblique, Backend::Quadrature).is_err());
    assert!(AtomFieldParams::new(3.0, 1.0, 0.0)
        .map(|p| amplitude(&p, &fin, &co(5.0), Backend::Quadrature).is_err())
        .unwrap());
}

#[test]
fn stationary_phase_example_point() {
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    let p = params(20.0);
    let c = stationary_phase_components(&p, &w, &co(60.0)).unwrap();
    let exact = window_integral_oracle(60.0, 20.0, 1.0, 0.0, 10.0);
    let approx = c.boundary + c.stationary.unwrap();
    assert!(rel(approx, exact) <= 0.1, "{}", rel(approx, exact));
    assert!(c.warnings.is_empty());
}

#[test]
fn stationary_phase_error_shrinks_with_omega() {
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    let mut last = f64::INFINITY;
    for omega in [5.0, 10.0, 20.0, 40.0] {
        let nu = 3.0 * omega;
        let sp = amplitude(&params(omega), &w, &co(nu), Backend::StationaryPhase).unwrap();
        let exact = window_integral_oracle(nu, omega, 1.0, 0.0, 10.0);
        let err = rel(sp.i_a, exact);
        assert!(err <= 2.0 / omega, "omega = {omega}: {err}");
        assert!(err < last, "omega = {omega}: {err} after {last}");
        last = err;
    }
}

#[test]
fn stationary_point_outside_window_is_flagged() {
    // τ_s = ln 3 > 1
    let w = FlightWindow::finite(0.0, 1.0).unwrap();
    let c = stationary_phase_components(&params(20.0), &w, &co(60.0)).unwrap();
    assert!(c.stationary.is_none());
    assert!(c.warnings.iter().any(|w| matches!(w, AmplitudeWarning::StationaryOmitted { .. })));
}

#[test]
fn resonance_band_uses_profile() {
    let w = FlightWindow::finite(0.0, 10.0).unwrap();
    let r = amplitude(&params(20.0), &w, &co(22.0), Backend::StationaryPhase).unwrap();
    let band = r.warnings.iter().find_map(|w| match w {
        AmplitudeWarning::ResonanceBand { boundary_resonance, .. } => Some(*boundary_resonance),
        _ => None,
    });
    assert_eq!(band, Some(true));
    let c = stationary_phase_components(&params(20.0), &w, &co(22.0)).unwrap();
    assert_eq!(r.components.unwrap().stationary, c.profile);
}

#[test]
fn closed_form_ratio_examples() {
    let r = ratio_free_space(3.0).unwrap();
    assert!((r - 6.512e-9).abs() < 1e-12);
    assert!((ratio_free_space(1e-12).unwrap() - 1.0).abs() < 1e-10);
    assert!(ratio_free_space(0.0).is_err());

    let res = asymptotic_ratio(3.0, 3.0, 1.0, true).unwrap();
    assert!((res - 1.0 / (6.0 * PI)).abs() < 1e-16);
    assert!((res - 0.05305).abs() < 1e-5);
    let far = asymptotic_ratio(1e9, 3.0, 1.0, false).unwrap();
    assert!((far - res).abs() < 1e-8 * res);
    let at_nu_eq_omega = asymptotic_ratio(3.0, 3.0, 1.0, false).unwrap();
    assert!((at_nu_eq_omega - 1.0 / (8.0 * PI * 3.0)).abs() < 1e-16);
}

#[test]
fn effective_temperature_examples() {
    let t = effective_temperature(3.0, 1.0).unwrap();
    assert!((t.hbar_omega_over_kt - (6.0 * PI).ln()).abs() < 1e-15);
    assert!((t.hbar_omega_over_kt - 2.936).abs() < 1e-3);
    let res = asymptotic_ratio(3.0, 3.0, 1.0, true).unwrap();
    assert!(((-t.hbar_omega_over_kt).exp() - res).abs() < 1e-15);
    assert!(((-3.0 / t.unruh).exp() - ratio_free_space(3.0).unwrap()).abs() < 1e-20);
    assert!(effective_temperature(0.1, 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn backends_agree_on_random_points(omega in 0.3f64..3.0, nu in 0.5f64..50.0, counter in any::<bool>()) {
        let dir = if counter { Direction::Counter } else { Direction::Co };
        let m = ModeGeometry::new(nu, dir).unwrap();
        let w = FlightWindow::finite(0.0, 10.0).unwrap();
        let q = amplitude(&params(omega), &w, &m, Backend::Quadrature).unwrap();
        let g = amplitude(&params(omega), &w, &m, Backend::IncompleteGamma).unwrap();
        prop_assert!(rel(q.i_a, g.i_a) <= 1e-8, "I_a: {}", rel(q.i_a, g.i_a));
        prop_assert!(rel(q.i_e, g.i_e) <= 1e-8, "I_e: {}", rel(q.i_e, g.i_e));
    }

    #[test]
    fn free_space_planck_structure(omega in 0.2f64..4.0, nu in 0.1f64..100.0) {
        let r = amplitude(&params(omega), &FlightWindow::infinite(), &co(nu), Backend::FreeSpace).unwrap();
        let x = 2.0 * PI * omega;
        let planck = x / x.exp_m1();
        prop_assert!((r.emi_rate() * nu * nu - planck).abs() <= 1e-10 * planck);
        prop_assert!(r.err_estimate >= 0.0);
    }
}

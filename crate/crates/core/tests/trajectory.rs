use accelrad::trajectory::{
    coupling_factor, doppler_frequency, four_velocity, kinematics, velocity, Direction, ModeGeometry, Worldline,
};
use proptest::prelude::*;

#[test]
fn accelerated_worldline_values() {
    let w = Worldline::uniform_acceleration(2.0, 0.0).unwrap();
    assert_eq!(kinematics(&w, 0.0), (0.0, 0.0));
    let w = Worldline::uniform_acceleration(2.0, 0.3).unwrap();
    let (t, z) = kinematics(&w, 0.5);
    assert!((t - (0.3 + 1f64.sinh() / 2.0)).abs() < 1e-15);
    assert!((z - (1f64.cosh() - 1.0) / 2.0).abs() < 1e-15);
}

#[test]
fn constant_velocity_and_oscillation() {
    let rest = Worldline::constant_velocity(0.0).unwrap();
    assert_eq!(kinematics(&rest, 5.0), (5.0, 0.0));
    let m = ModeGeometry::new(3.0, Direction::Co).unwrap();
    assert_eq!(doppler_frequency(&rest, &m, 0.0).unwrap(), 3.0);
    let osc = Worldline::oscillating(1.0, 0.5, 2.0).unwrap();
    let (t, z) = kinematics(&osc, 0.25);
    assert_eq!(t, 0.25);
    assert!((z - (1.0 + 0.5 * 0.5f64.cos())).abs() < 1e-15);
    assert!(doppler_frequency(&osc, &m, 0.0).is_err());
    assert_eq!(coupling_factor(&osc, Direction::Co, 3.0).unwrap(), 1.0);
}

#[test]
fn accelerated_doppler_and_coupling() {
    let w = Worldline::uniform_acceleration(1.0, 0.0).unwrap();
    let co = ModeGeometry::new(8.0, Direction::Co).unwrap();
    assert_eq!(doppler_frequency(&w, &co, 0.0).unwrap(), 8.0);
    assert!((doppler_frequency(&w, &co, 2f64.ln()).unwrap() - 4.0).abs() < 1e-14);
    assert_eq!(coupling_factor(&w, Direction::Co, 0.0).unwrap(), 1.0);
    assert!((coupling_factor(&w, Direction::Co, 2.0).unwrap() - (-2.0f64).exp()).abs() < 1e-16);
    assert!((coupling_factor(&w, Direction::Counter, 2.0).unwrap() - 2.0f64.exp()).abs() < 1e-14);
}

#[test]
fn invalid_worldlines_and_modes() {
    assert!(Worldline::uniform_acceleration(0.0, 0.0).is_err());
    assert!(Worldline::constant_velocity(1.0).is_err());
    assert!(Worldline::oscillating(0.0, -1.0, 1.0).is_err());
    assert!(Worldline::oscillating(0.0, 1.0, 0.0).is_err());
    assert!(ModeGeometry::new(0.0, Direction::Co).is_err());
    assert!(ModeGeometry::new(1.0, Direction::Oblique(1.5)).is_err());
}

proptest! {
    #[test]
    fn accelerated_worldline_is_unit_timelike(alpha in 0.01f64..10.0, x in -15.0f64..15.0) {
        let w = Worldline::uniform_acceleration(alpha, 0.0).unwrap();
        let (dt, dz) = four_velocity(&w, x / alpha);
        prop_assert!((dt * dt - dz * dz - 1.0).abs() < 1e-12 * dt * dt);
    }

    #[test]
    fn velocity_below_light(alpha in 0.01f64..10.0, x in -15.0f64..15.0) {
        let w = Worldline::uniform_acceleration(alpha, 0.0).unwrap();
        let v = velocity(&w, x / alpha);
        prop_assert!(v.abs() < 1.0);
        prop_assert!((v - x.tanh()).abs() < 1e-15);
    }

    #[test]
    fn velocity_matches_finite_difference(alpha in 0.1f64..5.0, x in -3.0f64..3.0) {
        let w = Worldline::uniform_acceleration(alpha, 0.0).unwrap();
        let tau = x / alpha;
        let h = 1e-5 / alpha;
        let (t1, z1) = kinematics(&w, tau - h);
        let (t2, z2) = kinematics(&w, tau + h);
        prop_assert!(((z2 - z1) / (t2 - t1) - velocity(&w, tau)).abs() < 1e-7);
    }

    #[test]
    fn co_and_counter_doppler_product(alpha in 0.01f64..10.0, x in -20.0f64..20.0, nu in 0.1f64..100.0) {
        let w = Worldline::uniform_acceleration(alpha, 0.0).unwrap();
        let co = doppler_frequency(&w, &ModeGeometry::new(nu, Direction::Co).unwrap(), x / alpha).unwrap();
        let counter = doppler_frequency(&w, &ModeGeometry::new(nu, Direction::Counter).unwrap(), x / alpha).unwrap();
        prop_assert!((co * counter - nu * nu).abs() < 1e-13 * nu * nu);
    }

    #[test]
    fn constant_velocity_doppler_reciprocal(v in -0.99f64..0.99, nu in 0.1f64..100.0) {
        let w = Worldline::constant_velocity(v).unwrap();
        let co = doppler_frequency(&w, &ModeGeometry::new(nu, Direction::Co).unwrap(), 0.0).unwrap();
        let counter = doppler_frequency(&w, &ModeGeometry::new(nu, Direction::Counter).unwrap(), 0.0).unwrap();
        prop_assert!((co * counter - nu * nu).abs() < 1e-12 * nu * nu);
        let expect = ((1.0 - v) / (1.0 + v)).sqrt();
        prop_assert!((co / nu - expect).abs() < 1e-13 * expect);
    }
}

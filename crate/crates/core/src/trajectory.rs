//! Atom worldlines and the kinematic quantities feeding the amplitude integrands.
//!
//! Units: c = 1. For accelerated runs frequencies are usually measured in
//! units of α, but nothing here assumes α = 1.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrajectoryError {
    #[error("invalid worldline: {0}")]
    InvalidWorldline(String),
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error("unsupported worldline/mode combination: {0}")]
    Unsupported(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Worldline {
    /// Hyperbolic motion with proper acceleration `alpha` (in units of c).
    UniformAcceleration { alpha: f64, t0: f64 },
    ConstantVelocity { v_over_c: f64 },
    /// `z = z0 + amplitude * cos(omega0 t)`, with lab time used as proper time.
    Oscillating { z0: f64, amplitude: f64, omega0: f64 },
}

impl Worldline {
    pub fn uniform_acceleration(alpha: f64, t0: f64) -> Result<Self, TrajectoryError> {
        if !(alpha > 0.0 && alpha.is_finite()) || !t0.is_finite() {
            return Err(TrajectoryError::InvalidWorldline(format!(
                "uniform acceleration needs finite alpha > 0 and finite t0 (got alpha = {alpha}, t0 = {t0})"
            )));
        }
        Ok(Worldline::UniformAcceleration { alpha, t0 })
    }

    pub fn constant_velocity(v_over_c: f64) -> Result<Self, TrajectoryError> {
        if !(v_over_c.abs() < 1.0) {
            return Err(TrajectoryError::InvalidWorldline(format!("|v/c| must be < 1, got {v_over_c}")));
        }
        Ok(Worldline::ConstantVelocity { v_over_c })
    }

    pub fn oscillating(z0: f64, amplitude: f64, omega0: f64) -> Result<Self, TrajectoryError> {
        if !(amplitude >= 0.0 && amplitude.is_finite()) || !(omega0 > 0.0 && omega0.is_finite()) || !z0.is_finite() {
            return Err(TrajectoryError::InvalidWorldline(format!(
                "oscillation needs A >= 0 and omega0 > 0 (got A = {amplitude}, omega0 = {omega0})"
            )));
        }
        Ok(Worldline::Oscillating { z0, amplitude, omega0 })
    }
}

/// Propagation direction of the mode relative to the atom's motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Direction {
    Co,
    Counter,
    /// `k_z / k` in `[-1, 1]`.
    Oblique(f64),
}

impl Direction {
    /// `k_z / k`: +1 for co-, -1 for counter-propagating.
    pub fn kz_over_k(self) -> f64 {
        match self {
            Direction::Co => 1.0,
            Direction::Counter => -1.0,
            Direction::Oblique(c) => c,
        }
    }

    /// Sign applied to α in the amplitude integrand (the α → -α rule).
    pub fn alpha_sign(self) -> Result<f64, TrajectoryError> {
        match self {
            Direction::Co => Ok(1.0),
            Direction::Counter => Ok(-1.0),
            Direction::Oblique(_) => Err(TrajectoryError::Unsupported("oblique modes use the angular amplitude")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGeometry {
    pub nu: f64,
    pub direction: Direction,
}

impl ModeGeometry {
    pub fn new(nu: f64, direction: Direction) -> Result<Self, TrajectoryError> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(TrajectoryError::InvalidMode(format!("nu must be finite and > 0, got {nu}")));
        }
        if let Direction::Oblique(c) = direction {
            if !(c.abs() <= 1.0) {
                return Err(TrajectoryError::InvalidMode(format!("|kz/k| must be <= 1, got {c}")));
            }
        }
        Ok(ModeGeometry { nu, direction })
    }

    pub fn kz(&self) -> f64 {
        self.nu * self.direction.kz_over_k()
    }

    pub fn k_perp(&self) -> f64 {
        let c = self.direction.kz_over_k();
        self.nu * (1.0 - c * c).max(0.0).sqrt()
    }
}

/// Lab time and position `(t, z)` at proper time `tau`.
pub fn kinematics(w: &Worldline, tau: f64) -> (f64, f64) {
    match *w {
        Worldline::UniformAcceleration { alpha, t0 } => {
            let x = alpha * tau;
            (t0 + x.sinh() / alpha, (x.cosh() - 1.0) / alpha)
        }
        Worldline::ConstantVelocity { v_over_c } => {
            let t = tau / (1.0 - v_over_c * v_over_c).sqrt();
            (t, v_over_c * t)
        }
        Worldline::Oscillating { z0, amplitude, omega0 } => (tau, z0 + amplitude * (omega0 * tau).cos()),
    }
}

/// `(dt/dτ, dz/dτ)`.
pub fn four_velocity(w: &Worldline, tau: f64) -> (f64, f64) {
    match *w {
        Worldline::UniformAcceleration { alpha, .. } => ((alpha * tau).cosh(), (alpha * tau).sinh()),
        Worldline::ConstantVelocity { v_over_c } => {
            let gamma = 1.0 / (1.0 - v_over_c * v_over_c).sqrt();
            (gamma, gamma * v_over_c)
        }
        Worldline::Oscillating { amplitude, omega0, .. } => (1.0, -amplitude * omega0 * (omega0 * tau).sin()),
    }
}

/// Lab-frame velocity `dz/dt` in units of c.
pub fn velocity(w: &Worldline, tau: f64) -> f64 {
    match *w {
        Worldline::UniformAcceleration { alpha, .. } => (alpha * tau).tanh(),
        _ => {
            let (dt, dz) = four_velocity(w, tau);
            dz / dt
        }
    }
}

/// Field frequency seen by the atom at proper time `tau`.
pub fn doppler_frequency(w: &Worldline, m: &ModeGeometry, tau: f64) -> Result<f64, TrajectoryError> {
    match *w {
        Worldline::UniformAcceleration { alpha, .. } => {
            let s = m.direction.alpha_sign()?;
            Ok(m.nu * (-s * alpha * tau).exp())
        }
        Worldline::ConstantVelocity { v_over_c } => {
            let kv = m.kz() * v_over_c;
            Ok(m.nu * ((m.nu - kv) / (m.nu + kv)).sqrt())
        }
        Worldline::Oscillating { .. } => Err(TrajectoryError::Unsupported("no Doppler frequency for oscillating worldlines")),
    }
}

/// Boost factor multiplying the coupling `g`.
pub fn coupling_factor(w: &Worldline, direction: Direction, tau: f64) -> Result<f64, TrajectoryError> {
    match *w {
        Worldline::UniformAcceleration { alpha, .. } => Ok((-direction.alpha_sign()? * alpha * tau).exp()),
        _ => Ok(1.0),
    }
}

//! Photon-number dynamics of a cavity mode pumped by a random atomic beam.
//!
//! The diagonal of the field density matrix obeys
//!
//! `dρ_n/dt = -R2[(n+1)ρ_n - nρ_{n-1}] - (R1+κ)[nρ_n - (n+1)ρ_{n+1}]`
//!
//! on a Fock space truncated at `N_max`, with the upward flux out of the top
//! level suppressed so that the truncated generator conserves probability.

use thiserror::Error;

use crate::amplitudes::AmplitudeResult;

/// Allowed deviation of `Σρ_n` from one.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// Steady-state mass allowed in the top Fock level.
pub const STEADY_TAIL: f64 = 1e-12;
/// Mass in the top level that aborts an evolution.
pub const OVERFLOW_TAIL: f64 = 1e-9;
/// `dt (R1 + R2 + κ) N_max` must stay below this.
pub const STABILITY_LIMIT: f64 = 0.1;
const MAX_FOCK: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("invalid rates: {0}")]
    InvalidRates(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("unstable step: dt (R1 + R2 + kappa) N_max = {0:.3e} exceeds {STABILITY_LIMIT}")]
    Unstable(f64),
    #[error("probability {tail:.3e} reached the truncation level N_max = {n_max}")]
    TruncationOverflow { n_max: usize, tail: f64 },
    #[error("no steady state: growth rate R2 - R1 - kappa = {growth_rate:.6e} >= 0")]
    NoSteadyState { growth_rate: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Absorption and emission coefficients, injection rate and cavity loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSet {
    pub r1: f64,
    pub r2: f64,
    pub r: f64,
    pub kappa: f64,
}

impl RateSet {
    pub fn new(r1: f64, r2: f64, r: f64, kappa: f64) -> Result<Self, DynamicsError> {
        for (name, v) in [("R1", r1), ("R2", r2), ("r", r), ("kappa", kappa)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(DynamicsError::InvalidRates(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(RateSet { r1, r2, r, kappa })
    }

    pub fn with_loss(self, kappa: f64) -> Result<Self, DynamicsError> {
        RateSet::new(self.r1, self.r2, self.r, kappa)
    }

    /// `R2 / (R1 + κ)`.
    pub fn boltzmann(&self) -> f64 {
        self.r2 / (self.r1 + self.kappa)
    }

    pub fn growth_rate(&self) -> f64 {
        self.r2 - self.r1 - self.kappa
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    rho: Vec<f64>,
}

impl PhotonDistribution {
    pub fn new(rho: Vec<f64>) -> Result<Self, DynamicsError> {
        if rho.is_empty() {
            return Err(DynamicsError::InvalidDistribution("empty distribution".into()));
        }
        if let Some((n, v)) = rho.iter().enumerate().find(|(_, v)| !(**v >= 0.0 && v.is_finite())) {
            return Err(DynamicsError::InvalidDistribution(format!("rho[{n}] = {v}")));
        }
        let total: f64 = rho.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(DynamicsError::InvalidDistribution(format!("total probability {total}")));
        }
        Ok(PhotonDistribution { rho })
    }

    pub fn vacuum(n_max: usize) -> Self {
        let mut rho = vec![0.0; n_max + 1];
        rho[0] = 1.0;
        PhotonDistribution { rho }
    }

    /// Geometric distribution `(1-q)qⁿ`; the tail beyond `n_max` is dropped.
    pub fn thermal(q: f64, n_max: usize) -> Result<Self, DynamicsError> {
        if !(0.0..1.0).contains(&q) {
            return Err(DynamicsError::InvalidArgument(format!("q must lie in [0, 1), got {q}")));
        }
        let mut rho = Vec::with_capacity(n_max + 1);
        let mut v = 1.0 - q;
        for _ in 0..=n_max {
            rho.push(v);
            v *= q;
        }
        Ok(PhotonDistribution { rho })
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn n_max(&self) -> usize {
        self.rho.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.rho.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.rho.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    pub fn tail(&self) -> f64 {
        self.rho[self.rho.len() - 1]
    }

    /// Total-variation distance; the shorter distribution is padded with zeros.
    pub fn total_variation(&self, other: &PhotonDistribution) -> f64 {
        let n = self.rho.len().max(other.rho.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        0.5 * (0..n).map(|i| (get(&self.rho, i) - get(&other.rho, i)).abs()).sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalOccupations {
    /// Occupation of the acceleration bath, `1/(e^{2πω/α} - 1)`.
    pub n_a: f64,
    /// Occupation of the thermal background, `1/(e^{ħω/kT} - 1)`.
    pub n_t: f64,
}

impl ThermalOccupations {
    pub fn new(n_a: f64, n_t: f64) -> Result<Self, DynamicsError> {
        if !(n_a >= 0.0) || !(n_t >= 0.0) {
            return Err(DynamicsError::InvalidArgument(format!("occupations must be >= 0 (got {n_a}, {n_t})")));
        }
        Ok(ThermalOccupations { n_a, n_t })
    }

    /// Bose occupation `1/(e^x - 1)`; `x = ∞` gives 0.
    pub fn bose(x: f64) -> f64 {
        1.0 / x.exp_m1()
    }

    pub fn from_exponents(two_pi_omega_over_alpha: f64, hbar_omega_over_kt: f64) -> Result<Self, DynamicsError> {
        ThermalOccupations::new(Self::bose(two_pi_omega_over_alpha), Self::bose(hbar_omega_over_kt))
    }
}

/// `R1 = r g² |I_a|²`, `R2 = r g² |I_e|²`.
pub fn rates_from_amplitudes(r: f64, g: f64, result: &AmplitudeResult) -> Result<RateSet, DynamicsError> {
    if !(r >= 0.0) || !(g >= 0.0) {
        return Err(DynamicsError::InvalidRates(format!("r and g must be >= 0 (got {r}, {g})")));
    }
    let k = r * g * g;
    RateSet::new(k * result.abs_rate(), k * result.emi_rate(), r, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub dist: PhotonDistribution,
    /// `Σρ_n` at the end minus at the start; not corrected.
    pub trace_drift: f64,
}

fn derivative(rho: &[f64], rates: &RateSet, out: &mut [f64]) {
    let n_max = rho.len() - 1;
    let down = rates.r1 + rates.kappa;
    for n in 0..=n_max {
        let nf = n as f64;
        let mut d = 0.0;
        if n < n_max {
            d -= rates.r2 * (nf + 1.0) * rho[n];
            d += down * (nf + 1.0) * rho[n + 1];
        }
        if n > 0 {
            d += rates.r2 * nf * rho[n - 1];
        }
        d -= down * nf * rho[n];
        out[n] = d;
    }
}

/// Integrates the photon-number equation with `steps` RK4 steps of size `dt`.
pub fn evolve(
    dist: &PhotonDistribution,
    rates: &RateSet,
    dt: f64,
    steps: usize,
) -> Result<Evolution, DynamicsError> {
    if !(dt > 0.0 && dt.is_finite()) || steps == 0 {
        return Err(DynamicsError::InvalidArgument(format!("need dt > 0 and steps >= 1 (got {dt}, {steps})")));
    }
    let n_max = dist.n_max();
    let stiffness = dt * (rates.r1 + rates.r2 + rates.kappa) * n_max.max(1) as f64;
    if stiffness >= STABILITY_LIMIT {
        return Err(DynamicsError::Unstable(stiffness));
    }
    let start = dist.total();
    let len = n_max + 1;
    let mut y = dist.rho.clone();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len]);
    let mut tmp = vec![0.0; len];
    for _ in 0..steps {
        derivative(&y, rates, &mut k1);
        for i in 0..len {
            tmp[i] = y[i] + 0.5 * dt * k1[i];
        }
        derivative(&tmp, rates, &mut k2);
        for i in 0..len {
            tmp[i] = y[i] + 0.5 * dt * k2[i];
        }
        derivative(&tmp, rates, &mut k3);
        for i in 0..len {
            tmp[i] = y[i] + dt * k3[i];
        }
        derivative(&tmp, rates, &mut k4);
        for i in 0..len {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if y[n_max] > OVERFLOW_TAIL && n_max > 0 {
            return Err(DynamicsError::TruncationOverflow { n_max, tail: y[n_max] });
        }
    }
    // round-off can leave values a hair below zero
    for v in y.iter_mut() {
        if *v < 0.0 && *v > -1e-15 {
            *v = 0.0;
        }
    }
    let dist = PhotonDistribution { rho: y };
    let trace_drift = dist.total() - start;
    Ok(Evolution { dist, trace_drift })
}

/// Default truncation `max(20, ⌈20q/(1-q)⌉)`, doubled until the geometric
/// mass in the top level is below [`STEADY_TAIL`].
pub fn default_n_max(q: f64) -> Result<usize, DynamicsError> {
    if !(0.0..1.0).contains(&q) {
        return Err(DynamicsError::InvalidArgument(format!("q must lie in [0, 1), got {q}")));
    }
    let mut n = 20usize.max((20.0 * q / (1.0 - q)).ceil() as usize);
    while q > 0.0 && (1.0 - q) * q.powi(n as i32) >= STEADY_TAIL {
        n *= 2;
        if n > MAX_FOCK {
            return Err(DynamicsError::TruncationOverflow { n_max: n, tail: (1.0 - q) * q.powi(n as i32) });
        }
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub dist: PhotonDistribution,
    pub nbar: f64,
    /// `q = R2/(R1 + κ)`, the Boltzmann factor of the field.
    pub boltzmann: f64,
}

pub fn steady_state_thermal(rates: &RateSet) -> Result<SteadyState, DynamicsError> {
    if rates.growth_rate() >= 0.0 {
        return Err(DynamicsError::NoSteadyState { growth_rate: rates.growth_rate() });
    }
    let q = rates.boltzmann();
    let dist = PhotonDistribution::thermal(q, default_n_max(q)?)?;
    Ok(SteadyState { dist, nbar: q / (1.0 - q), boltzmann: q })
}

/// `ρ_aa/ρ_bb` of an accelerated atom in a thermal background.
pub fn atomic_steady_state(occ: &ThermalOccupations) -> f64 {
    let (a, t) = (occ.n_a, occ.n_t);
    if a.is_infinite() || t.is_infinite() {
        return 1.0;
    }
    (t * (a + 1.0) + (t + 1.0) * a) / (t * a + (t + 1.0) * (a + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_is_fixed_without_emission() {
        let rates = RateSet::new(1.0, 0.0, 1.0, 0.0).unwrap();
        let out = evolve(&PhotonDistribution::vacuum(20), &rates, 1e-3, 1000).unwrap();
        assert_eq!(out.dist, PhotonDistribution::vacuum(20));
        assert_eq!(out.trace_drift, 0.0);
    }

    #[test]
    fn steady_state_values() {
        let s = steady_state_thermal(&RateSet::new(1.0, 0.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(s.nbar, 0.0);
        assert_eq!(s.dist.rho()[0], 1.0);
        let err = steady_state_thermal(&RateSet::new(1.0, 2.0, 1.0, 0.5).unwrap()).unwrap_err();
        assert_eq!(err, DynamicsError::NoSteadyState { growth_rate: 0.5 });
    }

    #[test]
    fn truncation_grows_with_q() {
        assert_eq!(default_n_max(0.0).unwrap(), 20);
        assert_eq!(default_n_max(0.05).unwrap(), 20);
        let n = default_n_max(0.7).unwrap();
        assert!(0.3 * 0.7f64.powi(n as i32) < STEADY_TAIL);
        assert!(default_n_max(1.0).is_err());
    }

    #[test]
    fn stability_guard() {
        let rates = RateSet::new(1.0, 0.5, 1.0, 0.0).unwrap();
        assert!(matches!(
            evolve(&PhotonDistribution::vacuum(100), &rates, 1e-3, 1),
            Err(DynamicsError::Unstable(_))
        ));
    }

    #[test]
    fn invalid_inputs() {
        assert!(RateSet::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(PhotonDistribution::new(vec![0.5, 0.4]).is_err());
        assert!(PhotonDistribution::new(vec![1.5, -0.5]).is_err());
        assert!(ThermalOccupations::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn atomic_limits() {
        let occ = ThermalOccupations::new(0.0, 2.0).unwrap();
        assert!((atomic_steady_state(&occ) - 2.0 / 3.0).abs() < 1e-16);
        let occ = ThermalOccupations::new(f64::INFINITY, 1.0).unwrap();
        assert_eq!(atomic_steady_state(&occ), 1.0);
    }
}

//! Flat `key=value` reports for the single-point commands.

use accelrad::amplitudes::{
    amplitude, angular_amplitude, angular_stationary_ratio, constant_velocity_rates, interference_rates,
    monochromaticity_bound, parametric_rates, time_of_flight_tuning, AngularBackend, AtomFieldParams, Backend,
    FlightWindow, PARAMETRIC_MARGIN,
};
use accelrad::field_dynamics::{
    default_n_max, evolve, rates_from_amplitudes, steady_state_thermal, DynamicsError, PhotonDistribution, RateSet,
    STABILITY_LIMIT,
};
use accelrad::specfun::MAX_J_ORDER;
use accelrad::trajectory::{Direction, ModeGeometry};

use crate::scan::warning_name;
use crate::table::{format_float, Table};
use crate::CliError;

/// Number of `ρ_nn` entries printed.
pub const RHO_ENTRIES: usize = 10;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<(String, String)>,
}

impl Report {
    pub fn num(&mut self, key: &str, v: f64) {
        self.entries.push((key.to_string(), format_float(v)));
    }

    pub fn text(&mut self, key: &str, v: impl ToString) {
        self.entries.push((key.to_string(), v.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

/// A point of the accelerated scan whose amplitudes fix `R1` and `R2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub omega_over_alpha: f64,
    pub nu_over_alpha: f64,
    pub direction: Direction,
    pub tau_i_alpha: f64,
    pub tau_e_alpha: f64,
    pub backend: Backend,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RateSource {
    Explicit { r1: f64, r2: f64 },
    Scan(ScanPoint),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyStateRequest {
    pub source: RateSource,
    pub r: f64,
    pub g: f64,
    pub kappa: f64,
    /// Also integrate from the vacuum for this long and compare.
    pub evolve_time: Option<f64>,
}

fn scan_rates(pt: &ScanPoint, r: f64, g: f64) -> Result<RateSet, CliError> {
    let p = AtomFieldParams::new(pt.omega_over_alpha, g, 1.0)?;
    let w = if pt.backend == Backend::FreeSpace {
        FlightWindow::infinite()
    } else {
        FlightWindow::finite(pt.tau_i_alpha, pt.tau_e_alpha)?
    };
    let m = ModeGeometry::new(pt.nu_over_alpha, pt.direction).map_err(|e| CliError::Invalid(e.to_string()))?;
    let res = amplitude(&p, &w, &m, pt.backend)?;
    Ok(rates_from_amplitudes(r, g, &res)?)
}

pub fn steady_state_report(req: &SteadyStateRequest) -> Result<Report, CliError> {
    let base = match &req.source {
        RateSource::Explicit { r1, r2 } => RateSet::new(*r1, *r2, req.r, 0.0)?,
        RateSource::Scan(pt) => scan_rates(pt, req.r, req.g)?,
    };
    let rates = base.with_loss(req.kappa)?;
    let mut rep = Report::default();
    rep.num("r1", rates.r1);
    rep.num("r2", rates.r2);
    rep.num("kappa", rates.kappa);
    rep.num("growth_rate", rates.growth_rate());
    let ss = match steady_state_thermal(&rates) {
        Ok(ss) => ss,
        Err(DynamicsError::NoSteadyState { growth_rate }) => {
            rep.text("steady_state", "none");
            rep.text("reason", "gain exceeds absorption plus loss; the photon number grows without bound");
            rep.num("instantaneous_growth_rate", growth_rate);
            return Ok(rep);
        }
        Err(e) => return Err(e.into()),
    };
    rep.text("steady_state", "thermal");
    rep.num("q", ss.boltzmann);
    rep.num("nbar", ss.nbar);
    rep.num("hbar_nu_over_kt", -ss.boltzmann.ln());
    for (n, v) in ss.dist.rho().iter().take(RHO_ENTRIES).enumerate() {
        rep.num(&format!("rho_{n}"), *v);
    }
    if let Some(t) = req.evolve_time {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Invalid(format!("evolve time must be > 0, got {t}")));
        }
        let n_max = default_n_max(ss.boltzmann)?;
        let total = rates.r1 + rates.r2 + rates.kappa;
        let dt_max = 0.5 * STABILITY_LIMIT / (total * n_max as f64);
        let steps = (t / dt_max).ceil().max(1.0) as usize;
        let ev = evolve(&PhotonDistribution::vacuum(n_max), &rates, t / steps as f64, steps)?;
        rep.num("evolve_time", t);
        rep.text("evolve_steps", steps);
        rep.num("evolved_nbar", ev.dist.mean());
        rep.num("evolved_total_variation", ev.dist.total_variation(&ss.dist));
        rep.num("trace_drift", ev.trace_drift);
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngularRequest {
    pub omega_over_alpha: f64,
    pub nu_over_alpha: f64,
    pub kz_over_k: f64,
    /// `None` for the infinite window.
    pub window: Option<(f64, f64)>,
    pub closed_form: bool,
}

pub fn angular_report(req: &AngularRequest) -> Result<Report, CliError> {
    let p = AtomFieldParams::new(req.omega_over_alpha, 1.0, 1.0)?;
    let m = ModeGeometry::new(req.nu_over_alpha, Direction::Oblique(req.kz_over_k))
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let (w, backend) = match req.window {
        None if req.closed_form => (FlightWindow::infinite(), AngularBackend::InfiniteClosedForm),
        None => (FlightWindow::infinite(), AngularBackend::Quadrature),
        Some(_) if req.closed_form => {
            return Err(CliError::Invalid("the closed form needs the infinite window".into()));
        }
        Some((a, b)) => (FlightWindow::finite(a, b)?, AngularBackend::Quadrature),
    };
    let res = angular_amplitude(&p, &w, &m, backend)?;
    let mut rep = Report::default();
    rep.num("kz_over_k", req.kz_over_k);
    rep.num("k_perp_over_alpha", m.k_perp());
    rep.num("abs_rate", res.abs_rate());
    rep.num("emi_rate", res.emi_rate());
    rep.num("ratio", res.ratio());
    rep.num("err_estimate", res.err_estimate);
    if !w.infinite {
        match angular_stationary_ratio(&p, &m, &w) {
            Ok(st) => {
                rep.num("stationary_ratio", st.ratio);
                rep.num("stationary_tau_alpha", st.tau_s);
                for wn in &st.warnings {
                    rep.text("warning", warning_name(wn));
                }
            }
            Err(e) => rep.text("stationary_ratio", format!("unavailable ({e})")),
        }
    }
    Ok(rep)
}

/// Constant-velocity crossing; frequencies in units of `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantVelocityRequest {
    pub nu_over_omega: f64,
    pub v_over_c: f64,
    pub direction: Direction,
    /// `ωT`; ignored when `tune` is set.
    pub omega_t: Option<f64>,
    /// `(n1, n2)` of the time-of-flight tuning.
    pub tune: Option<(i64, i64)>,
    /// `k·v/ω` used by the tuning.
    pub kv_over_omega: Option<f64>,
    pub lambda_over_length: Option<f64>,
}

pub fn constant_velocity_report(req: &ConstantVelocityRequest) -> Result<Report, CliError> {
    let p = AtomFieldParams::new(1.0, 1.0, 0.0)?;
    let mut rep = Report::default();
    if let Some((n1, n2)) = req.tune {
        let kv = req.kv_over_omega.unwrap_or(req.nu_over_omega * req.v_over_c * req.direction.kz_over_k());
        let tof = time_of_flight_tuning(req.nu_over_omega, kv, 1.0, n1, n2);
        rep.num("kv_over_omega", kv);
        rep.num("omega_t", tof.t);
        rep.num("two_omega_t_over_pi", 2.0 * tof.t / std::f64::consts::PI);
        rep.text("tuning_consistent", tof.consistent);
        if tof.t > 0.0 && tof.t.is_finite() {
            // first-order Doppler shift, so ν - kv may be negative
            let r = interference_rates(1.0, req.nu_over_omega - kv, 1.0, tof.t)?;
            rep.num("r1", r.r1);
            rep.num("r2", r.r2);
        }
    } else {
        let t = req.omega_t.ok_or_else(|| CliError::Invalid("give --omega-t or --tune".into()))?;
        let r = constant_velocity_rates(&p, req.nu_over_omega, req.v_over_c, t, req.direction)?;
        rep.num("r1", r.r1);
        rep.num("r2", r.r2);
        rep.num("ratio", r.r2 / r.r1);
    }
    if let Some(x) = req.lambda_over_length {
        rep.num("monochromaticity_bound", monochromaticity_bound(req.v_over_c, x));
    }
    Ok(rep)
}

/// Oscillating atom; frequencies in units of `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricRequest {
    pub omega0_over_omega: f64,
    pub kz_a: f64,
    pub gamma_over_omega: f64,
    pub nu_min: f64,
    pub nu_max: f64,
    pub points: usize,
    pub p_max: Option<usize>,
}

pub const PARAMETRIC_HEADER: [&str; 4] = ["nu_over_omega", "abs_rate", "emi_rate", "ratio"];

pub fn parametric_table(req: &ParametricRequest) -> Result<Table, CliError> {
    if req.points < 2 || !(req.nu_min > 0.0 && req.nu_min < req.nu_max) {
        return Err(CliError::Invalid(format!(
            "need points >= 2 and 0 < nu-min < nu-max (got {}, [{}, {}])",
            req.points, req.nu_min, req.nu_max
        )));
    }
    let p = AtomFieldParams::new(1.0, 1.0, 0.0)?;
    let p_max = req
        .p_max
        .unwrap_or_else(|| ((req.kz_a.abs() + PARAMETRIC_MARGIN).ceil() as usize).clamp(1, MAX_J_ORDER));
    let mut table = Table::new(&PARAMETRIC_HEADER);
    for i in 0..req.points {
        let nu = if i == req.points - 1 {
            req.nu_max
        } else {
            req.nu_min + (req.nu_max - req.nu_min) * i as f64 / (req.points - 1) as f64
        };
        let r = parametric_rates(&p, nu, req.omega0_over_omega, req.kz_a, req.gamma_over_omega, p_max)?;
        table.rows.push(vec![nu, r.r1, r.r2, r.r2 / r.r1]);
    }
    Ok(table)
}

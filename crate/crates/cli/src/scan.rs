//! Frequency scans of the accelerated-atom amplitudes over `ν/α`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use accelrad::amplitudes::{amplitude, AmplitudeWarning, AtomFieldParams, Backend, FlightWindow};
use accelrad::trajectory::{Direction, ModeGeometry};
use rayon::prelude::*;

use crate::config::{pick, Config};
use crate::table::Table;
use crate::CliError;

pub const SCAN_HEADER: [&str; 4] = ["nu_over_alpha", "abs_rate", "emi_rate", "ratio"];

pub const SCAN_KEYS: [&str; 11] =
    ["omega", "nu-min", "nu-max", "points", "direction", "tau-i", "tau-e", "backend", "log", "serial", "output"];

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub omega_over_alpha: f64,
    pub nu_over_alpha_min: f64,
    pub nu_over_alpha_max: f64,
    pub points: usize,
    pub direction: Direction,
    pub tau_i_alpha: f64,
    pub tau_e_alpha: f64,
    pub backend: Backend,
    /// Logarithmic grid in `ν/α` instead of the default linear one.
    pub log_grid: bool,
    pub output_path: Option<PathBuf>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            omega_over_alpha: 3.0,
            nu_over_alpha_min: 0.5,
            nu_over_alpha_max: 60.0,
            points: 2000,
            direction: Direction::Co,
            tau_i_alpha: 0.0,
            tau_e_alpha: 10.0,
            backend: Backend::IncompleteGamma,
            log_grid: false,
            output_path: None,
        }
    }
}

/// Command-line values for a scan; `None` falls back to the config file.
#[derive(Debug, Clone, Default)]
pub struct ScanOverrides {
    pub omega: Option<f64>,
    pub nu_min: Option<f64>,
    pub nu_max: Option<f64>,
    pub points: Option<usize>,
    pub direction: Option<String>,
    pub tau_i: Option<f64>,
    pub tau_e: Option<f64>,
    pub backend: Option<String>,
    pub log: Option<bool>,
    pub output: Option<PathBuf>,
}

pub fn parse_direction(s: &str) -> Result<Direction, CliError> {
    match s {
        "co" => Ok(Direction::Co),
        "counter" => Ok(Direction::Counter),
        other => Err(CliError::Invalid(format!("direction must be 'co' or 'counter', got '{other}'"))),
    }
}

pub fn parse_backend(s: &str) -> Result<Backend, CliError> {
    s.parse().map_err(CliError::Invalid)
}

impl ScanConfig {
    pub fn resolve(flags: ScanOverrides, cfg: &Config) -> Result<Self, CliError> {
        cfg.check_keys(&SCAN_KEYS)?;
        let d = ScanConfig::default();
        let direction = pick(flags.direction, cfg, "direction", "co".to_string())?;
        let backend = pick(flags.backend, cfg, "backend", d.backend.name().to_string())?;
        let output = match flags.output {
            Some(p) => Some(p),
            None => cfg.get::<PathBuf>("output")?,
        };
        let c = ScanConfig {
            omega_over_alpha: pick(flags.omega, cfg, "omega", d.omega_over_alpha)?,
            nu_over_alpha_min: pick(flags.nu_min, cfg, "nu-min", d.nu_over_alpha_min)?,
            nu_over_alpha_max: pick(flags.nu_max, cfg, "nu-max", d.nu_over_alpha_max)?,
            points: pick(flags.points, cfg, "points", d.points)?,
            direction: parse_direction(&direction)?,
            tau_i_alpha: pick(flags.tau_i, cfg, "tau-i", d.tau_i_alpha)?,
            tau_e_alpha: pick(flags.tau_e, cfg, "tau-e", d.tau_e_alpha)?,
            backend: parse_backend(&backend)?,
            log_grid: pick(flags.log, cfg, "log", false)?,
            output_path: output,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Invalid(msg));
        if !(self.omega_over_alpha > 0.0 && self.omega_over_alpha.is_finite()) {
            return bad(format!("omega/alpha must be > 0, got {}", self.omega_over_alpha));
        }
        let (lo, hi) = (self.nu_over_alpha_min, self.nu_over_alpha_max);
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return bad(format!("need 0 < nu-min < nu-max, got [{lo}, {hi}]"));
        }
        if self.points < 2 {
            return bad(format!("points must be >= 2, got {}", self.points));
        }
        if self.direction.alpha_sign().is_err() {
            return bad("scans support co- and counter-propagating modes only".into());
        }
        if self.backend != Backend::FreeSpace {
            FlightWindow::finite(self.tau_i_alpha, self.tau_e_alpha).map_err(|e| CliError::Invalid(e.to_string()))?;
        }
        Ok(())
    }

    /// The `ν/α` grid, uniform in `ν` or in `ln ν`.
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi) = (self.nu_over_alpha_min, self.nu_over_alpha_max);
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == self.points - 1 {
                    return hi;
                }
                let t = i as f64 / last;
                if self.log_grid {
                    (lo.ln() + t * (hi.ln() - lo.ln())).exp()
                } else {
                    lo + t * (hi - lo)
                }
            })
            .collect()
    }

    fn window(&self) -> FlightWindow {
        if self.backend == Backend::FreeSpace {
            FlightWindow::infinite()
        } else {
            FlightWindow { tau_i: self.tau_i_alpha, tau_e: self.tau_e_alpha, infinite: false }
        }
    }
}

pub fn warning_name(w: &AmplitudeWarning) -> &'static str {
    match w {
        AmplitudeWarning::NotAsymptotic { .. } => "not-asymptotic",
        AmplitudeWarning::StationaryOmitted { .. } => "stationary-omitted",
        AmplitudeWarning::ResonanceBand { .. } => "resonance-band",
        AmplitudeWarning::NearThreshold => "near-threshold",
        AmplitudeWarning::CompanionStationaryPoint { .. } => "companion-stationary-point",
        AmplitudeWarning::StationaryOutsideWindow { .. } => "stationary-outside-window",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutput {
    pub table: Table,
    /// `(ν/α, message)` for rows written as NaN.
    pub failures: Vec<(f64, String)>,
    pub warnings: BTreeMap<&'static str, usize>,
}

impl ScanOutput {
    pub fn summary(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.warnings.iter().map(|(k, n)| format!("warning: {k} on {n} rows")).collect();
        for (nu, msg) in &self.failures {
            lines.push(format!("failed: nu/alpha = {nu}: {msg}"));
        }
        lines
    }
}

type Row = (Vec<f64>, Result<Vec<AmplitudeWarning>, String>);

fn evaluate(cfg: &ScanConfig, params: &AtomFieldParams, window: &FlightWindow, nu: f64) -> Row {
    let res = ModeGeometry::new(nu, cfg.direction)
        .map_err(|e| e.to_string())
        .and_then(|m| amplitude(params, window, &m, cfg.backend).map_err(|e| e.to_string()));
    match res {
        Ok(r) => (vec![nu, r.abs_rate(), r.emi_rate(), r.ratio()], Ok(r.warnings)),
        Err(e) => (vec![nu, f64::NAN, f64::NAN, f64::NAN], Err(e)),
    }
}

/// Runs the scan; rows come back in grid order whether or not they were
/// computed in parallel.
pub fn run_scan(cfg: &ScanConfig, parallel: bool) -> Result<ScanOutput, CliError> {
    cfg.validate()?;
    let params = AtomFieldParams::new(cfg.omega_over_alpha, 1.0, 1.0)?;
    let window = cfg.window();
    let grid = cfg.grid();
    let rows: Vec<Row> = if parallel {
        grid.par_iter().map(|&nu| evaluate(cfg, &params, &window, nu)).collect()
    } else {
        grid.iter().map(|&nu| evaluate(cfg, &params, &window, nu)).collect()
    };
    let mut table = Table::new(&SCAN_HEADER);
    let mut failures = Vec::new();
    let mut warnings = BTreeMap::new();
    for (row, status) in rows {
        match status {
            Ok(ws) => {
                for w in &ws {
                    *warnings.entry(warning_name(w)).or_insert(0) += 1;
                }
            }
            Err(msg) => failures.push((row[0], msg)),
        }
        table.rows.push(row);
    }
    Ok(ScanOutput { table, failures, warnings })
}

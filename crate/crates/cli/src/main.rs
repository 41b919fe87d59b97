use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use accelrad_cli::config::Config;
use accelrad_cli::plot::{render_svg, PlotSpec};
use accelrad_cli::report::{
    angular_report, constant_velocity_report, parametric_table, steady_state_report, AngularRequest,
    ConstantVelocityRequest, ParametricRequest, RateSource, Report, ScanPoint, SteadyStateRequest,
};
use accelrad_cli::scan::{parse_backend, parse_direction, run_scan, ScanConfig, ScanOverrides};
use accelrad_cli::table::Table;
use accelrad_cli::CliError;
use accelrad::trajectory::Direction;
use clap::{Args, Parser, Subcommand};

/// Emission and absorption by accelerated atoms crossing a cavity.
///
/// Units: c = 1. For accelerated atoms every frequency and rate is given in
/// units of the acceleration frequency alpha = a/c, and proper times as
/// alpha*tau. Constant-velocity and oscillating atoms use units of the atomic
/// frequency omega instead.
#[derive(Parser)]
#[command(name = "accelrad", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan |I_a|^2, |I_e|^2 and their ratio over nu/alpha and write CSV.
    Scan(ScanArgs),
    /// Thermal steady state of the cavity field.
    SteadyState(SteadyArgs),
    /// Amplitudes for a mode at an angle to the acceleration.
    Angular(AngularArgs),
    /// Rates for an atom crossing at constant velocity (units of omega).
    ConstantVelocity(VelocityArgs),
    /// Rates for an atom oscillating along the axis, scanned over nu/omega.
    Parametric(ParametricArgs),
    /// Draw CSV columns as an SVG line plot.
    Plot(PlotArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// key = value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// omega/alpha.
    #[arg(long)]
    omega: Option<f64>,
    /// Lower end of the nu/alpha grid.
    #[arg(long)]
    nu_min: Option<f64>,
    /// Upper end of the nu/alpha grid.
    #[arg(long)]
    nu_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// co or counter.
    #[arg(long)]
    direction: Option<String>,
    /// Cavity entry, alpha*tau_i.
    #[arg(long, allow_hyphen_values = true)]
    tau_i: Option<f64>,
    /// Cavity exit, alpha*tau_e.
    #[arg(long, allow_hyphen_values = true)]
    tau_e: Option<f64>,
    /// quadrature, incomplete-gamma, stationary-phase or free-space.
    #[arg(long)]
    backend: Option<String>,
    /// Grid uniform in ln(nu).
    #[arg(long)]
    log: bool,
    /// Evaluate rows on one thread.
    #[arg(long)]
    serial: bool,
    /// CSV path; stdout if absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SteadyArgs {
    /// Absorption rate R1 (with --r2 instead of a scan point).
    #[arg(long, requires = "r2")]
    r1: Option<f64>,
    /// Emission rate R2.
    #[arg(long, requires = "r1")]
    r2: Option<f64>,
    /// omega/alpha of the scan point.
    #[arg(long, conflicts_with = "r1")]
    omega: Option<f64>,
    /// nu/alpha of the scan point.
    #[arg(long, default_value_t = 50.0)]
    nu: f64,
    #[arg(long, default_value = "co")]
    direction: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    tau_i: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    tau_e: f64,
    #[arg(long, default_value = "incomplete-gamma")]
    backend: String,
    /// Atomic injection rate r.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Coupling g.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Cavity loss rate.
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
    /// Also evolve from the vacuum for this time and compare.
    #[arg(long)]
    evolve_time: Option<f64>,
}

#[derive(Args)]
struct AngularArgs {
    /// omega/alpha.
    #[arg(long)]
    omega: f64,
    /// nu/alpha.
    #[arg(long)]
    nu: f64,
    /// k_z/k in [-1, 1].
    #[arg(long, allow_hyphen_values = true)]
    kz_over_k: f64,
    /// alpha*tau_i; omit both bounds for the infinite window.
    #[arg(long, requires = "tau_e", allow_hyphen_values = true)]
    tau_i: Option<f64>,
    #[arg(long, requires = "tau_i", allow_hyphen_values = true)]
    tau_e: Option<f64>,
    /// Bessel-K closed form (infinite window only).
    #[arg(long)]
    closed_form: bool,
}

#[derive(Args)]
struct VelocityArgs {
    /// nu/omega.
    #[arg(long)]
    nu: f64,
    /// v/c.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v: f64,
    #[arg(long, default_value = "co")]
    direction: String,
    /// Transit time omega*T.
    #[arg(long)]
    omega_t: Option<f64>,
    /// Time-of-flight tuning n1,n2; fixes T.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "omega_t")]
    tune: Option<Vec<i64>>,
    /// k.v/omega for the tuning; defaults to nu*v*kz/k.
    #[arg(long, allow_hyphen_values = true)]
    kv: Option<f64>,
    /// lambda/L for the velocity-spread bound.
    #[arg(long)]
    lambda_over_length: Option<f64>,
}

#[derive(Args)]
struct ParametricArgs {
    /// omega0/omega.
    #[arg(long)]
    omega0: f64,
    /// k_z A.
    #[arg(long, allow_hyphen_values = true)]
    kza: f64,
    /// gamma/omega.
    #[arg(long, default_value_t = 0.05)]
    gamma: f64,
    #[arg(long, default_value_t = 0.1)]
    nu_min: f64,
    #[arg(long, default_value_t = 4.0)]
    nu_max: f64,
    #[arg(long, default_value_t = 400)]
    points: usize,
    /// Largest |p| in the Bessel sum.
    #[arg(long)]
    p_max: Option<usize>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Input CSV.
    input: PathBuf,
    /// Comma-separated columns; default all but x.
    #[arg(long, value_delimiter = ',')]
    columns: Vec<String>,
    /// x column; default the first.
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    log_x: bool,
    #[arg(long)]
    log_y: bool,
    #[arg(long, short)]
    output: PathBuf,
}

fn emit_table(table: &Table, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => table.save(p),
        None => {
            let stdout = std::io::stdout();
            table.write(stdout.lock()).map_err(|e| CliError::Invalid(e.to_string()))
        }
    }
}

fn print_report(rep: &Report) -> Result<(), CliError> {
    std::io::stdout().write_all(rep.render().as_bytes()).map_err(|e| CliError::io("stdout", e))
}

fn scan(a: ScanArgs) -> Result<ExitCode, CliError> {
    let cfg = match &a.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let serial = a.serial || cfg.get::<bool>("serial")?.unwrap_or(false);
    let flags = ScanOverrides {
        omega: a.omega,
        nu_min: a.nu_min,
        nu_max: a.nu_max,
        points: a.points,
        direction: a.direction,
        tau_i: a.tau_i,
        tau_e: a.tau_e,
        backend: a.backend,
        log: a.log.then_some(true),
        output: a.output,
    };
    let sc = ScanConfig::resolve(flags, &cfg)?;
    let out = run_scan(&sc, !serial)?;
    emit_table(&out.table, sc.output_path.as_ref())?;
    for line in out.summary() {
        eprintln!("{line}");
    }
    Ok(if out.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn steady(a: SteadyArgs) -> Result<ExitCode, CliError> {
    let source = match (a.r1, a.r2, a.omega) {
        (Some(r1), Some(r2), _) => RateSource::Explicit { r1, r2 },
        (_, _, Some(omega)) => RateSource::Scan(ScanPoint {
            omega_over_alpha: omega,
            nu_over_alpha: a.nu,
            direction: parse_direction(&a.direction)?,
            tau_i_alpha: a.tau_i,
            tau_e_alpha: a.tau_e,
            backend: parse_backend(&a.backend)?,
        }),
        _ => return Err(CliError::Invalid("give --r1 and --r2, or --omega for a scan point".into())),
    };
    let req = SteadyStateRequest { source, r: a.r, g: a.g, kappa: a.kappa, evolve_time: a.evolve_time };
    print_report(&steady_state_report(&req)?)?;
    Ok(ExitCode::SUCCESS)
}

fn angular(a: AngularArgs) -> Result<ExitCode, CliError> {
    let req = AngularRequest {
        omega_over_alpha: a.omega,
        nu_over_alpha: a.nu,
        kz_over_k: a.kz_over_k,
        window: a.tau_i.zip(a.tau_e),
        closed_form: a.closed_form,
    };
    print_report(&angular_report(&req)?)?;
    Ok(ExitCode::SUCCESS)
}

fn velocity(a: VelocityArgs) -> Result<ExitCode, CliError> {
    let direction: Direction = parse_direction(&a.direction)?;
    let tune = match a.tune.as_deref() {
        None => None,
        Some([n1, n2]) => Some((*n1, *n2)),
        Some(_) => return Err(CliError::Invalid("--tune takes two integers, n1,n2".into())),
    };
    let req = ConstantVelocityRequest {
        nu_over_omega: a.nu,
        v_over_c: a.v,
        direction,
        omega_t: a.omega_t,
        tune,
        kv_over_omega: a.kv,
        lambda_over_length: a.lambda_over_length,
    };
    print_report(&constant_velocity_report(&req)?)?;
    Ok(ExitCode::SUCCESS)
}

fn parametric(a: ParametricArgs) -> Result<ExitCode, CliError> {
    let req = ParametricRequest {
        omega0_over_omega: a.omega0,
        kz_a: a.kza,
        gamma_over_omega: a.gamma,
        nu_min: a.nu_min,
        nu_max: a.nu_max,
        points: a.points,
        p_max: a.p_max,
    };
    emit_table(&parametric_table(&req)?, a.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn plot(a: PlotArgs) -> Result<ExitCode, CliError> {
    let table = Table::load(&a.input)?;
    let spec = PlotSpec { x_column: a.x, columns: a.columns, log_x: a.log_x, log_y: a.log_y };
    let svg = render_svg(&table, &spec)?;
    std::fs::write(&a.output, svg).map_err(|e| CliError::io(a.output.display().to_string(), e))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Scan(a) => scan(a),
        Command::SteadyState(a) => steady(a),
        Command::Angular(a) => angular(a),
        Command::ConstantVelocity(a) => velocity(a),
        Command::Parametric(a) => parametric(a),
        Command::Plot(a) => plot(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

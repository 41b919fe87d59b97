//! Library side of the `accelrad` command-line tool: scans, reports, CSV
//! and SVG output. Everything is dimensionless, with frequencies in units of
//! the acceleration frequency α.

pub mod config;
pub mod plot;
pub mod report;
pub mod scan;
pub mod table;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("CSV line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("column '{0}' not found")]
    MissingColumn(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Amplitude(#[from] accelrad::amplitudes::AmplitudeError),
    #[error(transparent)]
    Dynamics(#[from] accelrad::field_dynamics::DynamicsError),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

//! Experiment runner: each command emits one dataset as CSV or JSON.
//!
//! Output is a pure function of the configuration, so identical flags give
//! byte-identical files.

pub mod angle;
mod commands;
pub mod table;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use thiserror::Error;

pub use commands::{circuit_cavity_overlap, linspace, run};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl From<cavsim::Error> for CliError {
    fn from(e: cavsim::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Readout probabilities against theta for several shot counts.
    Sweep,
    /// State transfer at (4k-1, pi/2) with tomography and fidelity.
    Transfer,
    /// Stokes parameters and density matrices of the transferred state.
    Tomo,
    /// Concurrence against theta.
    Concurrence,
    /// CHSH parameter against theta.
    Chsh,
    /// Circuit vs. cavity propagation over a parameter grid.
    Equivalence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "cavsim",
    version,
    about = "Coupled-cavity photon hopping emulated on two qubits"
)]
pub struct Cli {
    #[arg(long, value_enum)]
    pub command: Command,

    /// First theta of the grid (radians; accepts forms like `pi/4`).
    #[arg(long, default_value = "0", conflicts_with = "theta_list")]
    pub theta_start: String,
    #[arg(long, default_value = "pi", conflicts_with = "theta_list")]
    pub theta_end: String,
    #[arg(long, default_value = "pi/32", conflicts_with = "theta_list")]
    pub theta_step: String,
    /// Comma-separated thetas, replacing the start/end/step grid.
    #[arg(long)]
    pub theta_list: Option<String>,

    /// Shots per point; 0 means exact probabilities. `sweep` takes a
    /// comma-separated list.
    #[arg(long, default_value = "8192")]
    pub shots: String,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Transfer index: omega/J = 4k - 1.
    #[arg(long, default_value_t = 25)]
    pub k: i64,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Defaults to csv for tables and json for transfer/tomo.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub thetas: Vec<f64>,
    pub shots: Vec<u64>,
    pub seed: u64,
    pub k: i64,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let thetas = match &cli.theta_list {
            Some(list) => angle::parse_list(list)?,
            None => angle::grid(
                angle::parse(&cli.theta_start)?,
                angle::parse(&cli.theta_end)?,
                angle::parse(&cli.theta_step)?,
            )?,
        };
        if thetas.is_empty() {
            return Err(CliError::Validation("theta list is empty".into()));
        }
        let shots = cli
            .shots
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Validation(format!("invalid shot count `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if shots.len() > 1 && cli.command != Command::Sweep {
            return Err(CliError::Validation(
                "only `sweep` accepts several shot counts".into(),
            ));
        }
        if cli.k < 1 {
            return Err(CliError::Validation(format!(
                "k must be at least 1, got {}",
                cli.k
            )));
        }
        let format = cli.format.unwrap_or(match cli.command {
            Command::Transfer | Command::Tomo => Format::Json,
            _ => Format::Csv,
        });
        if format == Format::Csv && matches!(cli.command, Command::Transfer | Command::Tomo) {
            return Err(CliError::Validation(
                "transfer and tomo emit matrices; use --format json".into(),
            ));
        }
        Ok(Self {
            command: cli.command,
            thetas,
            shots,
            seed: cli.seed,
            k: cli.k,
            output_path: cli.out.clone(),
            format,
        })
    }

    /// The single shot count of non-sweep commands.
    pub fn shots(&self) -> u64 {
        self.shots[0]
    }
}

/// Rendered output plus any points that failed a pass/fail check.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub failures: Vec<String>,
}

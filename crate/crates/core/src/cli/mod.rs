//! Command-line front end.
//!
//! Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 verification
//! failure.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::oracle::OracleError;
use config::{ConfigError, Format};

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "CATPHASE_OUT";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("numerical oracle failed: {0}")]
    Oracle(#[from] OracleError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Oracle(_) => 1,
            CliError::Io(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "catphase",
    version,
    about = "Thermal cat-state Wigner functions and attenuation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Write the Wigner function on the grid.
    Field(#[command(flatten)] Common),
    /// Write the coordinate marginal and its terms.
    Marginal(#[command(flatten)] Common),
    /// Write the attenuation time series.
    Attenuation(#[command(flatten)] Common),
    /// Run the invariant suite and write verify.json.
    Verify(#[command(flatten)] Common),
}

#[derive(Debug, Clone, PartialEq, clap::Args)]
pub struct Common {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Single time overriding the configured list.
    #[arg(long, allow_hyphen_values = true)]
    pub time: Option<f64>,
    /// Skip the numerical attenuation column.
    #[arg(long)]
    pub analytic_only: bool,
    /// Output directory (overrides the config and CATPHASE_OUT).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Field(c)
            | Command::Marginal(c)
            | Command::Attenuation(c)
            | Command::Verify(c) => c,
        }
    }
}

fn execute(command: &Command) -> Result<(), CliError> {
    let common = command.common();
    let config = config::load(&common.config)?;
    let times = match common.time {
        Some(t) if !t.is_finite() => {
            return Err(CliError::Config(format!("--time {t} is not finite")))
        }
        Some(t) => vec![t],
        None => config.times.clone(),
    };
    let format = common.format.unwrap_or(config.format);
    let dir = common
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    commands::prepare_output_dir(&dir)?;

    match command {
        Command::Field(_) => {
            for &t in &times {
                let path = commands::cmd_field(&config, t, &dir, format)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Marginal(_) => {
            for &t in &times {
                let path = commands::cmd_marginal(&config, t, &dir, format)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Attenuation(c) => {
            let path = commands::cmd_attenuation(&config, &times, c.analytic_only, &dir, format)?;
            println!("wrote {}", path.display());
        }
        Command::Verify(_) => {
            let config = config::RunConfig { times, ..config };
            let (report, path) = commands::cmd_verify(&config, &dir)?;
            println!("wrote {}", path.display());
            println!("{} checks, status {}", report.checks.len(), report.status);
            if !report.passed() {
                let failed: Vec<String> = report
                    .failures()
                    .map(|c| match &c.message {
                        Some(m) => format!("{} ({m})", c.id),
                        None => c.id.clone(),
                    })
                    .collect();
                return Err(CliError::Verification(failed.join("; ")));
            }
        }
    }
    Ok(())
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("catphase: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

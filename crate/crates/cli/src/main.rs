//! `photon-am`: verification and profile runs for the E1 photon angular
//! momentum library.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use config::{Format, Overrides, RunConfig};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Compute(#[from] photon_am::Error),
    #[error("failed checks: {}", .0.join(", "))]
    Verification(Vec<String>),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) | CliError::Compute(_) => 1,
            CliError::Invalid(_) | CliError::Config { .. } => 2,
            CliError::Io(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "invalid_arguments",
            CliError::Config { .. } => "config_parse",
            CliError::Io(_) => "io",
            CliError::Compute(_) => "computation",
            CliError::Verification(_) => "verification_failure",
        }
    }

    fn report(&self) -> String {
        let mut v = json!({
            "schema": photon_am::SCHEMA_VERSION,
            "status": "error",
            "kind": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        match self {
            CliError::Config { line, .. } => v["line"] = json!(line),
            CliError::Verification(names) => v["failed"] = json!(names),
            _ => {}
        }
        commands::to_json(&v)
    }
}

#[derive(Parser)]
#[command(name = "photon-am", version, about = "Angular momentum of E1 photons: profiles and verifications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Spin and OAM radial densities with running shell integrals
    Radial,
    /// SU(2) closure and density commutator identities
    Algebra,
    /// Angular momentum variances of a single-photon Fock state
    Variance,
    /// Spin expectation and probability conservation during decay
    Decay,
    /// Maximally entangled radiated photon pair
    Entangle,
    /// Run every verification and report an aggregate pass/fail
    VerifyAll,
}

#[derive(Args)]
struct Flags {
    /// File of `key = value` lines; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cavity size kR (at least 20) [default: 100]
    #[arg(long = "kR", global = true)]
    kr: Option<f64>,
    /// Radial grid points or decay time points (at least 100) [default: 2000]
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Photon projection for `variance` (-1, 0 or 1) [default: 0]
    #[arg(long, global = true, allow_negative_numbers = true)]
    m: Option<i64>,
    /// Line quality of the decaying level (at least 50) [default: 1000]
    #[arg(long = "omega0-over-gamma", global = true)]
    omega0_over_gamma: Option<f64>,
    /// Fock space cutoff for operator algebra [default: 3]
    #[arg(long, global = true, allow_negative_numbers = true)]
    cutoff: Option<i64>,
    /// Residual tolerance for operator identities [default: 1e-12]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file [default: stdout]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json [default: csv for radial and decay, json otherwise]
    #[arg(long, global = true)]
    format: Option<String>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            kr: self.kr,
            samples: self.samples,
            m: self.m,
            omega0_over_gamma: self.omega0_over_gamma,
            cutoff: self.cutoff,
            tol: self.tol,
            out: self.out.clone(),
            format: self.format.clone(),
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let file = match &cli.flags.config {
        Some(path) => config::load_config(path)?,
        None => Overrides::default(),
    };
    let default_format = match cli.command {
        Command::Radial | Command::Decay => Format::Csv,
        _ => Format::Json,
    };
    let cfg = RunConfig::resolve(file.merged(cli.flags.overrides()), default_format)?;
    let output = match cli.command {
        Command::Radial => commands::radial(&cfg)?,
        Command::Algebra => commands::algebra(&cfg)?,
        Command::Variance => commands::variance(&cfg)?,
        Command::Decay => commands::decay(&cfg)?,
        Command::Entangle => commands::entangle(&cfg)?,
        Command::VerifyAll => commands::verify_all(&cfg)?,
    };
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &output.body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(e.to_string()))?
        }
    }
    if output.failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(output.failed))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Invalid(e.render().to_string().trim_end().to_string());
            eprint!("{}", err.report());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprint!("{}", err.report());
            ExitCode::from(err.exit_code())
        }
    }
}

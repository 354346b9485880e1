//! Command-line front end: problem specification files in, reports out.

pub mod commands;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use spec::{EndomorphismSpec, FoliationKind, FoliationSpec, Problem, ProblemSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{origin}:{line}:{column}: {message}")]
    Parse { origin: String, line: usize, column: usize, message: String },
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Dynamics(#[from] lefschetz_core::dynamics::DynamicsError),
    #[error(transparent)]
    Hyperbolic(#[from] lefschetz_core::hyperbolic::HyperbolicError),
    #[error(transparent)]
    Lefschetz(#[from] lefschetz_core::lefschetz::LefschetzError),
    #[error(transparent)]
    Lie(#[from] lefschetz_core::lie::LieError),
}

impl CliError {
    /// 2 for unreadable or malformed input, 1 for mathematical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Spec(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "lefschetz", version, about = "Exact Lefschetz trace formula checks for maps of nilmanifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebra, the group law and the endomorphism.
    Validate {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Central series, spectral splitting and layerwise density.
    Analyze {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Both sides of the trace formula for an invariant foliation.
    Lefschetz {
        spec: PathBuf,
        /// Overrides the foliation named in the spec (default unstable).
        #[arg(long, value_enum)]
        foliation: Option<FoliationKind>,
        /// Interval-mode width target, e.g. 1/1000 or 2^-64.
        #[arg(long)]
        precision: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Betti numbers of the nilmanifold.
    Betti {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Result of one invocation: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn from_result(r: Result<(bool, String), CliError>) -> Self {
        match r {
            Ok((ok, stdout)) => Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() },
            Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    Outcome::from_result(match cli.command {
        Command::Validate { spec, format } => commands::validate(&spec, format),
        Command::Analyze { spec, format } => commands::analyze(&spec, format),
        Command::Lefschetz { spec, foliation, precision, format } => {
            commands::lefschetz(&spec, foliation, precision.as_deref(), format)
        }
        Command::Betti { spec, format } => commands::betti(&spec, format),
    })
}

/// Parses arguments (the first one is the program name) and runs.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

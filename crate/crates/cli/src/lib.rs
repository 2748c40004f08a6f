//! Command-line front end for `corrsphere`.
//!
//! Exit codes: 0 success, 1 metric validation failure, 2 usage or input
//! error.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;
pub mod svg;

use std::process::ExitCode;

use args::{Cli, Command};
use config::ConfigFile;

/// Name of the environment variable holding the log filter.
pub const LOG_ENV: &str = "CORRSPHERE_LOG";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(#[from] corrsphere::Error),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ValidationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Outcome::Success => ExitCode::SUCCESS,
            Outcome::ValidationFailed => ExitCode::from(1),
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let file = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    let file = file.as_ref();
    match cli.command {
        Command::Analyze(a) => commands::analyze(&a.resolve(file)?),
        Command::Events(a) => commands::events(&a.resolve(file)?),
        Command::Validate(a) => {
            let write = a.out.is_some() || file.is_some_and(|f| f.out.is_some());
            commands::validate(&a.resolve(file)?, write)
        }
        Command::Simulate(a) => {
            let (cfg, out) = a.resolve(file);
            commands::simulate_cmd(&cfg, &out)
        }
    }
}

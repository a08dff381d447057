//! Command-line front end for `radial-rkhs`.
//!
//! Exit codes: 0 success, 1 a verification check failed (the report is still
//! written), 2 bad arguments, input or domain, 3 solver failure.

pub mod args;
pub mod commands;
pub mod output;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(radial_rkhs::Error),
    #[error("{0}")]
    Usage(String),
    #[error("solver failure: {0}")]
    Solver(radial_rkhs::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Usage(_) | CliError::Output(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl From<radial_rkhs::Error> for CliError {
    fn from(e: radial_rkhs::Error) -> Self {
        use radial_rkhs::Error::*;
        match e {
            Singular { .. } | NonConvergence { .. } => CliError::Solver(e),
            _ => CliError::Input(e),
        }
    }
}

/// Parse `argv`, run the command and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("radial-rkhs: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let config = RunConfig::from_cli(cli)?;
    let (artifact, code) = match &cli.command {
        Command::Kernel(a) => (commands::kernel(&config, a)?, 0),
        Command::Gram(a) => (commands::gram(&config, a)?, 0),
        Command::Interp(a) => (commands::interp(&config, a)?, 0),
        Command::Moser(a) => (commands::moser(&config, a)?, 0),
        Command::Verify(a) => {
            let report = verify::run_suite(&config, a.samples)?;
            let code = if report.all_passed() { 0 } else { 1 };
            (report.artifact(), code)
        }
    };
    output::emit(&output::render(&artifact, &config)?, &config)?;
    if code != 0 {
        eprintln!("radial-rkhs: one or more verification checks failed");
    }
    Ok(code)
}

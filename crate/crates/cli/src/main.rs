//! `dunkl-cesaro`: batch front end for the verification suite and parameter sweeps.
//!
//! Exit codes: 0 success, 1 numerical or I/O error, 2 usage error,
//! 3 a verification suite that ran but did not pass.

mod args;
mod commands;
mod config;
mod output;
mod values;

use args::{Cli, Command};
use clap::Parser;
use std::process::ExitCode;

/// Worker threads for sweeps; unset means one per core.
const THREADS_ENV: &str = "DUNKL_CESARO_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] dunkl_cesaro::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    configure_threads()?;
    let file = cli.config.as_deref();
    match cli.command {
        Command::Verify(a) => {
            let passed = commands::verify(&config::resolve(file, &a)?)?;
            return Ok(if passed { 0 } else { 3 });
        }
        Command::Kernel(a) => commands::kernel(&config::resolve(file, &a)?)?,
        Command::Norms(a) => commands::norms(&config::resolve(file, &a)?)?,
        Command::Converge(a) => commands::converge(&config::resolve(file, &a)?)?,
        Command::Pairing(a) => commands::pairing_sweep(&config::resolve(file, &a)?)?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests exit 0; every parse failure exits 2.
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

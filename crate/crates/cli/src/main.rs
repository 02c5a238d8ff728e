//! Command-line front end: evaluates the closed forms, optimizes the batch
//! size, runs seeded simulations and emits plot-ready CSV/JSON.

mod cli;
mod commands;
mod manifest;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

/// CLI failure classes, mapped onto exit codes: parameter errors exit 2,
/// I/O errors exit 3.
#[derive(Debug)]
pub enum CliError {
    Param(String),
    Io(String),
}

impl From<sprt_coherent::Error> for CliError {
    fn from(error: sprt_coherent::Error) -> Self {
        Self::Param(error.to_string())
    }
}

fn main() -> ExitCode {
    let parsed = match cli::Cli::try_parse() {
        Ok(parsed) => parsed,
        Err(error) => {
            let kind = error.kind();
            let _ = error.print();
            return match kind {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match with_thread_cap(|| commands::run_command(parsed.command, true)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CliError::Param(message))) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Ok(Err(CliError::Io(message))) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Honors SPRT_COHERENT_THREADS by scoping the work to a sized thread pool.
/// Results never depend on the pool size; only the wall clock does.
fn with_thread_cap<T: Send>(work: impl FnOnce() -> T + Send) -> Result<T, String> {
    match std::env::var("SPRT_COHERENT_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(work()),
        Err(error) => Err(format!("SPRT_COHERENT_THREADS: {error}")),
        Ok(text) => {
            let threads: usize = text
                .trim()
                .parse()
                .ok()
                .filter(|&t| t >= 1)
                .ok_or_else(|| {
                    format!("SPRT_COHERENT_THREADS must be a positive integer, got {text:?}")
                })?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|error| format!("cannot build thread pool: {error}"))?;
            Ok(pool.install(work))
        }
    }
}

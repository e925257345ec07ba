//! `gq`: enumerate Bohr–Sommerfeld windows, run verification suites and
//! convolve algebra elements.
//!
//! Exit codes: 0 when everything passed, 1 when a verification failed, 2 when
//! the command could not run (bad flags, bad input files).

mod args;
mod convolve;
mod enumerate;
mod output;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

pub enum Outcome {
    Pass,
    Fail,
}

/// Anything that stops a command from running; always exit code 2.
#[derive(Debug)]
pub struct UsageError(pub anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate(a) => enumerate::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Convolve(a) => convolve::run(&a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("gq: {e:#}");
            ExitCode::from(2)
        }
    }
}

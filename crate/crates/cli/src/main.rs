mod args;
mod output;
mod run;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Empty(String),
    Verification(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Empty(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid input: {m}"),
            CliError::Empty(m) => write!(f, "empty result: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match run::execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nu-dirac: {e}");
            ExitCode::from(e.code())
        }
    }
}

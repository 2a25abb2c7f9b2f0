mod cli;
mod commands;
mod demo;
mod verify;

use std::process::ExitCode;

use clap::Parser;

/// Failure classes, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable or malformed input (exit 2).
    Usage(anyhow::Error),
    /// A mathematical precondition does not hold (exit 3).
    Domain(raygeo::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<raygeo::Error> for Failure {
    fn from(e: raygeo::Error) -> Self {
        Failure::Domain(e)
    }
}

/// Outcome of a command that ran to completion: success, or a negative
/// verdict (failing law, no witness found).
pub type Verdict = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = cli::Cli::parse();
    let result = match cli.command {
        cli::Command::Verify(args) => verify::run(&args),
        cli::Command::Compute { what } => commands::compute(&what),
        cli::Command::Superpose(args) => commands::superpose(&args),
        cli::Command::Search(args) => commands::search(&args),
        cli::Command::DemoTwoSlit(args) => demo::run(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            println!("{}", commands::error_json(&e));
            ExitCode::from(3)
        }
    }
}

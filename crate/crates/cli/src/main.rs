//! `stinar` command-line front end.

mod dist;
mod fit;
mod mc;
mod output;
mod simulate;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "stinar", version, about = "Skew true INAR(1) simulation, fitting and Monte Carlo studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a path and write it as a one-column series.
    Simulate(simulate::Args),
    /// Fit a STINAR(1) or TINAR(1) model to an integer series.
    Fit(fit::Args),
    /// Run a Monte Carlo study and write the result tables.
    Mc(mc::Args),
    /// Evaluate the skew discrete Laplace distribution.
    Dist(dist::Args),
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use stinar::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::ParameterDomain(_) | Error::Inadmissible { .. } | Error::UnsupportedLags(_)) => 2,
        Some(Error::InputFormat { .. } | Error::Config(_)) => 3,
        Some(Error::DegenerateSeries(_)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate::run(a),
        Command::Fit(a) => fit::run(a),
        Command::Mc(a) => mc::run(a),
        Command::Dist(a) => dist::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

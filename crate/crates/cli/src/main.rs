//! `mbqc` — data tables, curves, and verification reports for the
//! five-qubit measurement-based gate simulator.
//!
//! Every command writes deterministic output: identical invocations produce
//! byte-identical files and reports. Exit codes: 0 success, 1 verification
//! failure, 2 argument error, 3 I/O error.

mod args;
mod commands;
mod config;
mod output;
mod verify;

use clap::Parser;

use crate::args::{Cli, Command};

/// Command-level failure carrying its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid argument: {0}")]
    Arg(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Arg(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<mbqc_sim::Error> for CliError {
    fn from(e: mbqc_sim::Error) -> Self {
        match e {
            mbqc_sim::Error::InvalidArgument(m) => CliError::Arg(m),
            mbqc_sim::Error::NumericConsistency(m) => CliError::Verification(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::ClusterCurve(a) => commands::cluster_curve(&a),
        Command::GateTable(a) => commands::gate_table(&a),
        Command::ResourceTable(a) => commands::resource_table(&a),
        Command::MemoryCurves(a) => commands::memory_curves(&a),
        Command::StddevMap(a) => commands::stddev_map(&a),
        Command::Verify(a) => verify::verify(&a),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

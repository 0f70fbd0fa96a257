//! Command-line front end: argument parsing, command dispatch and report
//! serialization.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use config::{Cli, Command, Format, RunConfig, Suite};
pub use error::CliError;
pub use report::{decode_json, parse_csv, Document};

/// Runs the parsed command and returns its report.
pub fn run(cli: &Cli) -> Result<Document, CliError> {
    let cfg = RunConfig::from_args(&cli.global)?;
    run_with(&cfg, &cli.command)
}

pub fn run_with(cfg: &RunConfig, command: &Command) -> Result<Document, CliError> {
    match command {
        Command::Spectrum => commands::cmd_spectrum(cfg),
        Command::Eigenfunction {
            level,
            ell,
            samples,
            r_max,
        } => commands::cmd_eigenfunction(cfg, *level, *ell, *samples, *r_max),
        Command::Verify { suite } => commands::cmd_verify(cfg, *suite),
        Command::Partner { level } => commands::cmd_partner(cfg, *level),
    }
}

fn emit(cli: &Cli) -> Result<bool, CliError> {
    let doc = run(cli)?;
    let text = doc.render(cli.global.format)?;
    match &cli.global.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(doc.passed())
}

/// Full program: parse, run, write. Returns the process exit code
/// (0 passed, 1 failed checks or numerical failure, 2 invalid input).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match emit(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

//! Batch front end for `ellipsoid-measures`.
//!
//! Every sub-command writes one JSON object (or a CSV header and row) to
//! standard output. Exit status is 0 on success, 2 on a usage error and 3
//! when a numerical method fails or `--validate` finds a deviation beyond
//! the command's tolerance.

mod args;
mod commands;
pub mod record;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use args::Cli;
use commands::{execute, Output};
use record::{write_record, write_rows, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] ellipsoid_measures::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_numerical_failure() => EXIT_VALIDATION,
            CliError::Io(_) => 1,
            _ => EXIT_USAGE,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match run_cli(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let common = &cli.common;
    let start = Instant::now();
    let outcome = match common.workers {
        Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::Usage(format!("--workers: {e}")))?
            .install(|| execute(&cli.command, common))?,
        None => execute(&cli.command, common)?,
    };
    let elapsed = start.elapsed().as_millis() as u64;
    let (mut record, rows) = match outcome.output {
        Output::Record(r) => (r, None),
        Output::Table(r, rows) => (r, Some(rows)),
    };
    if common.seed.is_some() {
        writeln!(err, "wall_time_ms: {elapsed}")?;
    } else {
        record.wall_time_ms = Some(elapsed);
    }
    match (common.format, rows) {
        (Format::Csv, Some(rows)) => write_rows(&rows, out)?,
        (format, _) => write_record(&record, format, out)?,
    }
    if !outcome.valid {
        writeln!(err, "validation failed: deviation {:?} exceeds the tolerance of `{}`", record.oracle_deviation, record.command)?;
        return Ok(EXIT_VALIDATION);
    }
    Ok(EXIT_OK)
}

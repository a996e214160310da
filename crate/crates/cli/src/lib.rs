//! Command-line front end for `lipext`: problems come in as JSON files,
//! reports go out as JSON on standard output, and failures as a JSON error
//! document on standard error with a distinct exit code (see [`error::exit`]).

pub mod commands;
pub mod error;
pub mod problem;
pub mod report;

use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;

use crate::commands::Cli;
use crate::error::{exit, CliError};
use crate::report::PlotRow;

fn write_plot(path: &Path, rows: &[PlotRow]) -> Result<(), CliError> {
    let fail = |e: csv::Error| {
        CliError::schema("PlotWrite", format!("cannot write {}: {e}", path.display()))
    };
    let mut writer = csv::Writer::from_path(path).map_err(fail)?;
    if rows.is_empty() {
        writer.write_record(["x", "y", "value"]).map_err(fail)?;
    }
    for row in rows {
        writer.serialize(row).map_err(fail)?;
    }
    writer
        .flush()
        .map_err(|e| CliError::schema("PlotWrite", format!("cannot write {}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let outcome = commands::run(cli)?;
    if let Some(path) = &cli.plot {
        let rows = outcome
            .plot
            .as_deref()
            .ok_or_else(|| CliError::schema("PlotUnsupported", "this command has no plot data"))?;
        write_plot(path, rows)?;
    }
    Ok(outcome.json)
}

/// Runs the program on `args` and returns the exit code, printing the report
/// or the error document.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(std::io::stdout().lock(), "{e}");
            return exit::OK;
        }
        Err(e) => {
            let err = CliError::schema("Usage", e.render().to_string().trim_end());
            eprintln!("{}", err.to_json());
            return err.code;
        }
    };
    match execute(&cli) {
        Ok(json) => {
            // A closed pipe (e.g. `| head`) is not an error of the command.
            let _ = writeln!(std::io::stdout().lock(), "{json}");
            exit::OK
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            err.code
        }
    }
}

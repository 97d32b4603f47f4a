//! Command-line front-end: instance and result file formats plus the
//! `validate`, `solve`, `generate`, `check` and `bench` subcommands.

pub mod commands;
pub mod error;
pub mod format;

use std::ffi::OsString;

use clap::Parser;

pub use commands::Cli;
pub use error::{CliError, EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
pub use format::{Exact, InstanceFile, ParseError, ResultFile};

/// Parses arguments, runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match commands::dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.hint() {
                eprintln!("hint: {hint}");
            }
            e.exit_code()
        }
    }
}

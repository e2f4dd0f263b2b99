//! Command-line front end: argument parsing, the classify / audit / export
//! commands and the session transports (terminal, JSON lines over a Unix
//! socket, HTTP).

pub mod args;
pub mod commands;
pub mod http;
pub mod socket;
pub mod terminal;

use std::io::Write;

pub use args::Cli;

/// Exit status for input, parse and validation errors.
pub const EXIT_ERROR: i32 = 2;

/// Runs a parsed command line, writing normal output to `out` and
/// diagnostics to `err`. Returns the process exit status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match commands::dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

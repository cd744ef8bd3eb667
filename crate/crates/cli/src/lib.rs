//! Command-line front end for `contpath-core`.
//!
//! Every command prints one table: CSV with a header row by default, or one
//! JSON object per row with `--format json`. Exit codes: 0 success, 1 domain
//! error, 2 usage error, 3 verification failure.

pub mod args;
pub mod commands;
pub mod output;
pub mod parse;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use contpath_core::{QuadConfig, SeriesConfig};

pub use args::Cli;
pub use commands::COMMAND_TABLE;

/// Built-in relative tolerance when neither `--tol` nor `CONTPATH_TOL` is set.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Parses `argv`, runs the command and writes to the given streams; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let series = match SeriesConfig::new(cli.tol.unwrap_or(DEFAULT_TOL), 0.0, cli.max_terms) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let ctx = commands::Ctx {
        series,
        quad: QuadConfig::default(),
    };
    match commands::run(&cli.command, &ctx) {
        Ok(rec) => {
            let _ = write!(out, "{}", rec.render(cli.format));
            0
        }
        Err(commands::Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(commands::Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(commands::Failure::Verify(rec)) => {
            let _ = write!(out, "{}", rec.render(cli.format));
            let _ = writeln!(err, "verification failed");
            3
        }
    }
}

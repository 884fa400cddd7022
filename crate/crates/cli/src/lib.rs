//! The `trider` command-line tool.
//!
//! Every verb prints one report with a status: `ok`, `violated`,
//! `none-exists` or `error`, mapped to exit codes 0 through 3.

pub mod args;
mod commands;
mod input;
pub mod report;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, OutputFormat};
use report::Report;

/// Exit code and standard output of one invocation.
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Output {
                code: 0,
                stdout: e.render().to_string(),
            };
        }
        Err(e) => {
            let report = Report::error("usage", e.render().to_string().trim_end());
            return Output {
                code: report.status.exit_code(),
                stdout: report.render_text(),
            };
        }
    };
    let report = commands::dispatch(cli.verb, &cli.opts);
    let stdout = match cli.opts.format {
        OutputFormat::Json => report.render_json(),
        OutputFormat::Text => report.render_text(),
    };
    Output {
        code: report.status.exit_code(),
        stdout,
    }
}

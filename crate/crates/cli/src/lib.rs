//! Command-line front end for `conics-core`.

pub mod args;
pub mod commands;
pub mod report;

use args::{Cli, Command};
use clap::error::ErrorKind;
use clap::Parser;
use std::ffi::OsString;
use std::io::Write;

pub const EXIT_OK: u8 = 0;
pub const EXIT_HYPOTHESIS: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

/// Parse `argv`, run the command and write its report. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Fiber(a) => commands::fiber::run(a),
        Command::Count(a) => commands::count::run(a),
        Command::Grr(a) => commands::grr::run(a),
        Command::Scan(a) => commands::scan::run(a),
        Command::Oracle(a) => commands::oracle::run(a),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            return e.code;
        }
    };
    let format = cli.output_format();
    let written = match &cli.out {
        Some(path) => std::fs::File::create(path).and_then(|mut f| report.write(format, &mut f)),
        None => report.write(format, stdout),
    };
    if let Err(e) = written {
        let target = cli
            .out
            .as_ref()
            .map_or("standard output".into(), |p| p.display().to_string());
        let _ = writeln!(stderr, "error: cannot write {target}: {e}");
        return EXIT_USAGE;
    }
    report.code
}

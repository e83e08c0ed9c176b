//! Command-line companion to the exact sumset-structure library: plain-text
//! set and progression formats, deterministic JSON-lines reports, and the
//! acceptance suite.

pub mod commands;
pub mod formats;
pub mod report;
pub mod suite;

use clap::error::ErrorKind;
use clap::Parser;

/// Runs one invocation against an argv slice (argv[0] is the binary name)
/// and returns (stdout, stderr, exit code). Exit codes: 0 pass, 1 failed
/// assertion, 2 usage or input error, 3 budget exceeded.
pub fn run(argv: &[String]) -> (String, String, i32) {
    match commands::Cli::try_parse_from(argv) {
        Ok(cli) => {
            let echo = commands::echo(argv);
            let (out, code) = commands::dispatch(&cli.cmd, &echo);
            (out, String::new(), code)
        }
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                (e.to_string(), String::new(), report::EXIT_OK)
            }
            _ => (String::new(), e.to_string(), report::EXIT_USAGE),
        },
    }
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use equifix_cli::{run, Cli};

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pbw_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from(Cli::parse());
    let outcome = run(&config);
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = out.write_all(outcome.output.as_bytes());
    ExitCode::from(outcome.status.code())
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use l0kit_cli::{run, Cli};

fn main() -> ExitCode {
    let outcome = run(&Cli::parse());
    print!("{}", outcome.stdout);
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr);
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code)
}

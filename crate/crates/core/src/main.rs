use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use graphprod::cli::{run, Cli, Invocation};

fn main() -> ExitCode {
    let inv: Invocation = Cli::parse().into();
    let out = run(&inv);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}

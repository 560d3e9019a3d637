use std::process::ExitCode;

use clap::Parser;
use supereigen_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let job = Cli::parse().into_job();
    let outcome = run(&job);
    if outcome.status == Status::Invalid {
        eprint!("{}", outcome.output);
    } else {
        print!("{}", outcome.output);
    }
    ExitCode::from(outcome.status.code() as u8)
}

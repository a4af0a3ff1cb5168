use std::process::ExitCode;

use clap::Parser;
use treeshell::cli::{self, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let result = cli::init_threads().and_then(|()| cli::run(&cfg));
    match result {
        Ok((outcome, text)) => {
            print!("{text}");
            ExitCode::from(outcome.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::error_code(&e) as u8)
        }
    }
}

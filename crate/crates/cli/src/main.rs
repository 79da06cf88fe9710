use std::process::ExitCode;

use clap::Parser;
use skelsnub_cli::commands::{apply_tolerance_env, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_tolerance_env(std::env::var("SKELSNUB_TOL").ok()).and_then(|_| run(cli));
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

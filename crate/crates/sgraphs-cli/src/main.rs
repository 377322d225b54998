//! The `sgraphs` binary: parse arguments, dispatch, map errors to the
//! exit-code contract (1 malformed input, 2 precondition violation,
//! 3 internal assertion).

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use sgraphs_cli::app::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    let outcome = std::panic::catch_unwind(|| {
        let mut out = String::new();
        let result = run(cli, &mut out);
        (out, result)
    });
    match outcome {
        Ok((out, Ok(()))) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok((out, Err(err))) => {
            print!("{out}");
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code() as u8)
        }
        Err(_) => {
            eprintln!("error: internal assertion failed");
            ExitCode::from(3)
        }
    }
}

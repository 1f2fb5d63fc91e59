//! `clausen`: tables and verification reports for Clausen-type hierarchies.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 domain, numerical or I/O error.

mod args;
mod commands;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Theta(a) => commands::theta(a),
        Command::Phase(a) => commands::phase(a),
        Command::Tower(a) => commands::tower(a),
        Command::Generating(a) => commands::generating(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

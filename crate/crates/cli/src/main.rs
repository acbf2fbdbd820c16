mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Table => outcome.table.clone(),
                Format::Structured => {
                    serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n"
                }
            };
            // A closed pipe downstream is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}

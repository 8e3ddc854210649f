//! CLI entry point.  JSON goes to stdout, the human summary to stderr;
//! exit code 0 means every requested check passed, 1 a failed check,
//! 2 an error.

mod commands;
mod corpus;
mod parse;
mod render;

use clap::Parser;

use commands::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let name = cli.command.name();
    match execute(&cli.command) {
        Ok(outcome) => {
            println!(
                "{}",
                render::envelope(name, outcome.checks_pass, outcome.result)
            );
            if !cli.json {
                eprintln!("{}", outcome.human);
            }
            std::process::exit(if outcome.checks_pass { 0 } else { 1 });
        }
        Err(e) => {
            println!("{}", render::error_envelope(&e.to_string()));
            if !cli.json {
                eprintln!("error: {e}");
            }
            std::process::exit(2);
        }
    }
}

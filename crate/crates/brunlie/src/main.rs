use std::process::ExitCode;

use brunlie::cli::{self, Cli, SpecError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli::run(&cli) {
        Ok(o) => {
            println!("{}", cli.render(&o.value));
            ExitCode::from(if o.pass { 0 } else { 1 })
        }
        Err(SpecError(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
    }
}

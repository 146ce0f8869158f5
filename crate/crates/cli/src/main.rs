use std::process::ExitCode;

use clap::Parser;
use nsimplex_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            println!("{}", doc.render(cli.format));
            ExitCode::from(exit_code(&doc))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

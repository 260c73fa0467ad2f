use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = twistalg::cli::Cli::parse();
    ExitCode::from(twistalg::cli::run(&cli))
}

use std::process::ExitCode;

use clap::Parser;
use problema_cli::args::Cli;
use problema_cli::commands;
use problema_cli::report::Status;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let report = commands::run(&cli, args);
    if cli.json {
        println!("{}", report.json());
    } else if report.status == Status::Usage {
        eprint!("{}", report.result["text"].as_str().unwrap_or_default());
        eprintln!();
    } else {
        print!("{}", report.text());
    }
    ExitCode::from(report.exit_code)
}

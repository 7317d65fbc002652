mod args;
mod commands;
mod report;

use std::io::Write;

use clap::Parser;

use args::Cli;
use report::{Failure, Outcome, Report};

fn main() {
    let cli = Cli::parse();
    let outcome = match configure_threads(cli.global.threads) {
        Ok(()) => commands::run(&cli.command, &cli.global).unwrap_or_else(Outcome::from),
        Err(f) => Outcome::from(f),
    };
    let report = Report::new(cli.command.name(), outcome);
    if let Some(e) = &report.error {
        eprintln!("unicon4 {}: {}", report.command, e.message);
    }
    let text = if cli.global.human { report.to_human() } else { report.to_json() + "\n" };
    // A closed pipe on stdout is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    std::process::exit(report.exit_code);
}

fn configure_threads(threads: Option<usize>) -> Result<(), Failure> {
    let Some(n) = threads else { return Ok(()) };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::input("arguments", format!("--threads: {e}")))
}

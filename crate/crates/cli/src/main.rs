use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use genus_cli::args::Cli;
use genus_cli::commands::{execute, exit_code};
use genus_cli::report::write_report;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{}", report.to_json());
    if let Some(path) = &cli.global.json {
        if let Err(e) = write_report(&report, path) {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    }
    for c in report.failed_checks() {
        eprintln!("check failed: {} {}", c.name, c.detail);
    }
    ExitCode::from(exit_code(&report) as u8)
}

use std::process::ExitCode;

use clap::Parser;
use eicf_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, err) = run(&cli.command, &cli.options());
    if cli.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else if let Some(e) = &err {
        eprintln!("eicf: {e}");
    } else {
        println!("{}", report.text);
        for d in &report.diagnostics {
            eprintln!("note: {d}");
        }
    }
    match err {
        None => ExitCode::SUCCESS,
        Some(e) => ExitCode::from(e.exit_code() as u8),
    }
}

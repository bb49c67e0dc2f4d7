use std::process::ExitCode;

use clap::Parser;
use extmcg_cli::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match (run(&cli), cli.format) {
        (Ok(report), Format::Json) => {
            println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        (Ok(report), Format::Text) => {
            print!("{}", report.text);
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        (Err(e), Format::Json) => {
            println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("serializable"));
            ExitCode::FAILURE
        }
        (Err(e), Format::Text) => {
            eprintln!("error ({}): {e}", e.kind());
            ExitCode::FAILURE
        }
    }
}

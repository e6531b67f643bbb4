use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mdeg_cli::args::Cli;
use mdeg_cli::commands::{run, wants_json, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if wants_json(&cli) {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json"))
            } else {
                out.text
            };
            // a closed pipe downstream is not an error
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::CheckFailed => ExitCode::from(4),
            }
        }
        Err(e) => {
            eprintln!("mdeg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

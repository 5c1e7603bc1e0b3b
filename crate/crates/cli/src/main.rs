use std::process::exit;

use clap::Parser;
use clap::error::ErrorKind;

use rpkit_cli::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            exit(code);
        }
    };
    let echo = std::env::args().collect::<Vec<_>>().join(" ");
    match run(&cli.command, &echo) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));
            } else {
                print!("{}", report.to_text());
            }
            exit(report.status.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code());
        }
    }
}

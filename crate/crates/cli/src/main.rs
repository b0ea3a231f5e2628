use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use pebblekit_cli::commands::{run, Command, Output};
use pebblekit_cli::exit;
use pebblekit_cli::report::Format;

/// Exact and structural k-pebbling numbers of graphs.
#[derive(Parser, Debug)]
#[command(name = "pebblekit", version)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let code = match run(&cli.command, &echo) {
        Ok(Output::Text(text)) => {
            print!("{text}");
            exit::OK
        }
        Ok(Output::Report(report)) => {
            print!("{}", report.render(cli.format));
            if report.passed {
                exit::OK
            } else {
                exit::CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit::for_error(&e)
        }
    };
    let _ = std::io::stdout().flush();
    eprintln!("elapsed: {:.2?}", start.elapsed());
    ExitCode::from(code as u8)
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tracekit::catalog::check_catalog;
use tracekit::cli::{exit_code, parse_session, render, run_all};

#[derive(Parser)]
#[command(name = "tracekit", version, about = "Trace ideals and centers of endomorphism rings")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session script.
    Run {
        file: PathBuf,
        /// One JSON object per command instead of text.
        #[arg(long)]
        json: bool,
        /// Seed for the randomized nonzerodivisor search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads for independent commands.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run the built-in acceptance suite over the catalog.
    CheckCatalog,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.command {
        Cmd::Run {
            file,
            json,
            seed,
            threads,
        } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {}: {e}", file.display());
                    return ExitCode::from(1);
                }
            };
            let session = match parse_session(&text, seed) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {}:{e}", file.display());
                    return ExitCode::from(1);
                }
            };
            let outcomes = run_all(&session, threads);
            print!("{}", render(&session, &outcomes, json));
            ExitCode::from(exit_code(&outcomes) as u8)
        }
        Cmd::CheckCatalog => {
            let ok = check_catalog(|line| println!("{line}"));
            ExitCode::from(if ok { 0 } else { 3 })
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use obcalc::{parse, run, Command, Options};

#[derive(Parser)]
#[command(name = "obcalc", version, about = "Open book calculator")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Euler characteristic and H0..H3 of every declared open book.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Performs the `sum` directives and prints the resulting open books.
    Sum {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compares sequential binding sums with the fibration oracle.
    OracleCompare {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Runs the `verify` directives, or all checks with defaults if none.
    ContactVerify {
        file: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (file, cmd, opts) = match cli.command {
        Cmd::Invariants { file, json } => (file, Command::Invariants, Options { json, ..Default::default() }),
        Cmd::Sum { file, json } => (file, Command::Sum, Options { json, ..Default::default() }),
        Cmd::OracleCompare { file, json } => (file, Command::OracleCompare, Options { json, ..Default::default() }),
        Cmd::ContactVerify { file, grid, tol, json } => (file, Command::ContactVerify, Options { grid, tol, json }),
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("obcalc: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let doc = match parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("obcalc: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    match run(&doc, cmd, &opts) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("obcalc: {}: {e}", file.display());
            ExitCode::from(2)
        }
    }
}

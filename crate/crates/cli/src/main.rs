//! `metastab <command> [--input FILE|-]`: one JSON document in, one out.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::Parser;
use metastab_cli::{registry, run, Options};

#[derive(Parser, Debug)]
#[command(
    name = "metastab",
    version,
    about = "Exact endoscopy, root-system and local-sign computations with JSON I/O"
)]
struct Cli {
    /// Command to run
    #[arg(value_parser = PossibleValuesParser::new(registry::command_names()))]
    command: String,

    /// JSON input file, or `-` for standard input
    #[arg(long, default_value = "-")]
    input: String,

    /// Seed for the randomized checks of `verify`
    #[arg(long)]
    seed: Option<u64>,

    /// Largest rank swept by `verify`
    #[arg(long)]
    nmax: Option<u64>,

    /// Suite run by `verify`: all, rootsys, endoscopy, motive, localsym
    #[arg(long)]
    suite: Option<String>,
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match read_input(&cli.input) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("metastab: cannot read {}: {e}", cli.input);
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        seed: cli.seed,
        nmax: cli.nmax,
        suite: cli.suite,
    };
    let out = run(&cli.command, &input, &opts);
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout().lock(), "{}", out.output);
    if out.status != 0 {
        eprintln!(
            "metastab: {} exited with status {}",
            cli.command, out.status
        );
    }
    ExitCode::from(out.status)
}

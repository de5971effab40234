use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tropgeom::cli::{run_subcommand, CliError, Options, INPUT_OPTIONAL, SUBCOMMANDS};
use tropgeom::scalar::Convention;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Max,
    Min,
}

/// Exact tropical geometry from the command line. Reads one JSON document,
/// writes one JSON document (SVG for `render`).
#[derive(Parser, Debug)]
#[command(name = "tropgeom", version)]
struct Args {
    /// One of: line, incidence, stable-line, intersect, coaxial, pencil, perspectivity,
    /// projectivity, tdet, singular, crossratio, witness, reconstruct, check-tp2, render
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUBCOMMANDS))]
    command: String,
    /// Input file, `-` for stdin
    #[arg(long, short)]
    input: Option<String>,
    /// Output file, `-` for stdout
    #[arg(long, short, default_value = "-")]
    output: String,
    #[arg(long, value_enum, default_value = "max")]
    convention: ConventionArg,
    /// Seed for witness and reconstruct
    #[arg(long)]
    seed: Option<u64>,
    /// Case budget for witness
    #[arg(long)]
    budget: Option<u64>,
}

fn read_input(args: &Args) -> Result<String, CliError> {
    let path = match args.input.as_deref() {
        None if INPUT_OPTIONAL.contains(&args.command.as_str()) => return Ok(String::new()),
        None | Some("-") => None,
        Some(p) => Some(p),
    };
    let mut buf = String::new();
    match path {
        None => io::stdin().read_to_string(&mut buf).map(|_| buf),
        Some(p) => fs::read_to_string(p),
    }
    .map_err(|e| CliError::Malformed(format!("cannot read input: {e}")))
}

fn write_output(path: &str, text: &str) -> io::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if path == "-" {
        io::stdout().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options {
        convention: match args.convention {
            ConventionArg::Max => Convention::MaxPlus,
            ConventionArg::Min => Convention::MinPlus,
        },
        seed: args.seed,
        budget: args.budget,
    };
    let result = read_input(&args).and_then(|input| run_subcommand(&args.command, &input, &opts));
    match result {
        Ok(out) => match write_output(&args.output, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            println!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use omni2::cli_io::{error_report, parse_document, run, Document, RunOptions, COMMANDS};
use omni2::Error;

/// Exact verification of omni-Lie 2-algebras, Dirac structures and Lie 2-algebras.
///
/// Exit codes: 0 pass or value, 1 mathematical failure, 2 input error.
#[derive(Parser, Debug)]
#[command(name = "omni2", version)]
struct Cli {
    /// One of: check-lie2, check-dgla, check-omni, anomaly, check-dirac, graph-dirac,
    /// char-pair, from-lie2, normalizer, derivations, twist-check, string-type, so3-example
    command: String,
    /// JSON input documents
    files: Vec<PathBuf>,
    /// Human-readable output instead of JSON
    #[arg(long)]
    pretty: bool,
    /// Seed for randomized checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random samples per randomized check
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Include wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

fn load(path: &PathBuf) -> Result<Document, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_document(&text).map_err(|e| match e {
        Error::Parse { path: p, msg } => Error::Parse { path: format!("{}:{p}", path.display()), msg },
        other => other,
    })
}

fn input_error(cli: &Cli, err: &Error) -> ExitCode {
    let v = error_report(&cli.command, err);
    if cli.pretty {
        eprintln!("{}: error: {err}", cli.command);
    } else {
        println!("{v}");
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !COMMANDS.contains(&cli.command.as_str()) {
        return input_error(&cli, &Error::UnknownCommand(cli.command.clone()));
    }
    let docs: Result<Vec<Document>, Error> = cli.files.iter().map(load).collect();
    let docs = match docs {
        Ok(d) => d,
        Err(e) => return input_error(&cli, &e),
    };
    let opts = RunOptions { seed: cli.seed, samples: cli.samples, timing: cli.timing };
    match run(&cli.command, &docs, &opts) {
        Ok(report) => {
            if cli.pretty {
                print!("{}", report.to_text());
            } else {
                println!("{}", report.to_json());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => input_error(&cli, &e),
    }
}

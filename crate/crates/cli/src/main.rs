//! `perfcorr` command-line front end.
//!
//! Exit codes: 0 when the checked property holds, 1 when it fails, 2 on usage or input errors.

mod commands;
mod instance;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Envelope;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] perfcorr::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "perfcorr", version, about = "Perfect-correlation and precise-measurement checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Numerical tolerance for operator and probability comparisons
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Window within which two eigenvalues count as the same outcome
    #[arg(long, global = true)]
    value_match_tol: Option<f64>,
    /// Seed for sampled states and simulated shots [default: 7]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of simulated shots [default: 100000]
    #[arg(long, global = true)]
    shots: Option<u64>,
    /// Random states drawn from the cyclic subspace [default: 32]
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Largest accepted |frequency - probability| for `simulate`
    #[arg(long, global = true, default_value_t = commands::DEFAULT_GATE)]
    gate: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide perfect correlation of a pair (X, Y) in a state
    Correlate { file: PathBuf },
    /// Decide whether a measuring process precisely measures A in a state
    MeasureCheck { file: PathBuf },
    /// Run the built-in counterexample, product-state and von Neumann fixtures
    PaperExamples,
    /// Monte-Carlo sample a pair (consecutive measurement) or a process (meter readout)
    Simulate { file: PathBuf },
}

fn run(cli: &Cli) -> Result<Envelope, CliError> {
    let flags = commands::Flags {
        tol: cli.tol,
        value_match_tol: cli.value_match_tol,
        seed: cli.seed,
        shots: cli.shots,
        samples: cli.samples,
        gate: cli.gate,
    };
    match &cli.command {
        Command::Correlate { file } => commands::correlate(file, &flags),
        Command::MeasureCheck { file } => commands::measure_check(file, &flags),
        Command::PaperExamples => commands::paper_examples(&flags),
        Command::Simulate { file } => commands::simulate(file, &flags),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(envelope) => {
            let rendered = match cli.format {
                Format::Text => envelope.to_text(),
                Format::Json => match serde_json::to_string_pretty(&envelope) {
                    Ok(json) => json + "\n",
                    Err(e) => {
                        eprintln!("error: cannot serialize report: {e}");
                        return ExitCode::from(2);
                    }
                },
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            ExitCode::from(if envelope.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

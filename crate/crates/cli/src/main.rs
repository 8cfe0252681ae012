//! `cmvscat`: forward and inverse CMV scattering from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 symbol
//! outside the uniqueness regime (or not regular under `--strict`).

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "cmvscat",
    version,
    about = "Forward and inverse scattering for CMV matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verblunsky JSON → scattering function CSV plus JSON sidecar.
    Forward(Flags),
    /// Scattering function CSV → recovery report JSON.
    Inverse(Flags),
    /// Forward map followed by recovery, with coefficient errors.
    Roundtrip(Flags),
    /// det(I − H*H) against the ρ product, one row per `--trunc` order.
    Widom(Flags),
    /// Class membership report for a sequence (JSON) or a symbol (CSV).
    Classify(Flags),
    /// Leading block of the GLM transform and its factorization residual.
    Glm(Flags),
    /// Two Jacobi-type sequences sharing the limit symbol t².
    DemoNonunique(Flags),
}

/// Flags shared by every subcommand; each uses the subset it needs.
#[derive(Args, Debug, Clone)]
struct Flags {
    /// Input file: Verblunsky JSON, or CSV for `inverse` and `classify`.
    #[arg(long)]
    input: Option<String>,
    /// Output path; stdout when omitted (required for `forward`).
    #[arg(long)]
    out: Option<String>,
    /// Grid size N, a power of two.
    #[arg(long, default_value_t = cmvscat::DEFAULT_GRID)]
    grid: usize,
    /// Hankel truncation M; a comma list for `widom`.
    #[arg(long)]
    trunc: Option<String>,
    /// Recovery order n_max; block size for `glm`.
    #[arg(long)]
    order: Option<usize>,
    /// Radius for the winding index.
    #[arg(long, default_value_t = cmvscat::classify::DEFAULT_RADIUS)]
    radius: f64,
    /// Exit with code 4 when the symbol is not regular.
    #[arg(long)]
    strict: bool,
    /// Also write the spectral density (`forward` only).
    #[arg(long)]
    weight: bool,
    /// Sequence truncations for `demo-nonunique`.
    #[arg(long, default_value = "100,400")]
    lengths: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Forward(f) => commands::forward(f),
        Command::Inverse(f) => commands::inverse(f),
        Command::Roundtrip(f) => commands::roundtrip(f),
        Command::Widom(f) => commands::widom(f),
        Command::Classify(f) => commands::classify(f),
        Command::Glm(f) => commands::glm(f),
        Command::DemoNonunique(f) => commands::demo_nonunique(f),
    };
    match result {
        Ok(summary) => {
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

//! `sepcheck`: separability thresholds of noisy W/GHZ families from the
//! command line. Every command writes CSV (or a text report for `verify`).

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sepcheck::FamilyKind;

#[derive(Debug, Parser)]
#[command(name = "sepcheck", version, about = "Separability thresholds across the one-qubit cut")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve for the threshold x* of one family and criterion.
    Threshold(ThresholdArgs),
    /// Reproduce a threshold table as CSV.
    Table(TableArgs),
    /// Sweep x*(q) over a grid of orders.
    Curve(CurveArgs),
    /// Print the sandwich spectrum at (x, q).
    Eigs(EigsArgs),
    /// Cross-check closed forms, bounds and reference tables.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilyKind,
    #[arg(long)]
    n: usize,
    /// One of cstre, ar, vn, ppt, cstre-inf, ar-inf.
    #[arg(long)]
    criterion: String,
    /// Order q, required for cstre and ar.
    #[arg(long)]
    q: Option<f64>,
    /// Bisection tolerance on x.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableId {
    #[value(name = "1")]
    PpW,
    #[value(name = "2")]
    WlW,
    #[value(name = "pp-ghz")]
    PpGhz,
    #[value(name = "wl-ghz")]
    WlGhz,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    id: TableId,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilyKind,
    #[arg(long)]
    n: usize,
    /// Comma-separated list drawn from cstre, ar.
    #[arg(long, value_delimiter = ',', required = true)]
    criterion: Vec<String>,
    #[arg(long)]
    q_min: f64,
    #[arg(long)]
    q_max: f64,
    #[arg(long)]
    q_steps: usize,
    /// Geometric instead of linear spacing.
    #[arg(long)]
    log_spacing: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Numeric,
    Analytic,
}

#[derive(Debug, Args)]
struct EigsArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilyKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    x: f64,
    #[arg(long)]
    q: f64,
    #[arg(long, value_enum)]
    source: Source,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Perturb the reference values so the report must fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|_| format!("unknown family '{s}' (expected pp-w, pp-ghz, wl-w or wl-ghz)"))
}

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values: exit 1.
    Usage(String),
    /// The criterion never changes sign: exit 2.
    NoSignChange(String),
    /// Anything else (I/O, numerical failures, failed verification): exit 1.
    Failed(String),
}

impl CliError {
    pub(crate) fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Failed(_) => 1,
            CliError::NoSignChange(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::NoSignChange(m) | CliError::Failed(m) => m,
        }
    }
}

/// Collapses clap's multi-line diagnostics into one line.
fn one_line(err: &clap::Error) -> String {
    let rendered = err.render().to_string();
    let mut parts = Vec::new();
    for line in rendered.lines() {
        let line = line.trim();
        if line.starts_with("Usage:") || line.starts_with("For more information") {
            break;
        }
        if !line.is_empty() {
            parts.push(line.trim_start_matches("error:").trim().to_string());
        }
    }
    parts.join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", err.render());
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {}", one_line(&err));
            return ExitCode::from(1);
        }
    };

    let result = match cli.command {
        Command::Threshold(a) => commands::threshold(a),
        Command::Table(a) => commands::table(a),
        Command::Curve(a) => commands::curve(a),
        Command::Eigs(a) => commands::eigs(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

//! `holoqubit`: command-line front end.
//!
//! Every invocation prints one self-contained document on stdout. Exit codes:
//! 0 success, 2 usage error, 3 oracle mismatch, 4 check failure.

mod commands;
mod output;

use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use holoqubit::spin_ops::Basis;

use output::{write_csv, write_json};

#[derive(Parser, Debug)]
#[command(name = "holoqubit", version, about = "Qubit gates as Möbius maps and holomorphic wavefunctions")]
pub struct Cli {
    /// Comparison tolerance; check thresholds scale by tol / 1e-10.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Read every angle argument in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Convert between sphere angles and the projected coordinate z.
    Project(ProjectArgs),
    /// Apply a gate sequence to a qubit through the holomorphic representation.
    Gate(GateArgs),
    /// Fixed points of a gate's Möbius map and their eigenstate alignment.
    FixedPoints(ElementArgs),
    /// Spin-l representation matrix of a gate.
    Rep(RepArgs),
    /// Euler-angle matrix elements, optionally cross-checked against the oracle.
    Dmatrix(DmatrixArgs),
    /// Run every invariant suite.
    Check(CheckArgs),
    /// Reproduce the gate table with discrepancy flags.
    Table1,
    /// Fixed-point sphere coordinates for plotting.
    #[command(name = "fig1-data")]
    Fig1Data(Fig1Args),
}

#[derive(Args, Debug, Serialize)]
pub struct ProjectArgs {
    #[arg(long, allow_hyphen_values = true, requires = "phi")]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "theta")]
    pub phi: Option<f64>,
    /// `re,im`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_floats::<2>)]
    pub z: Option<[f64; 2]>,
    /// The point at infinity.
    #[arg(long)]
    pub inf: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct GateArgs {
    /// Comma-separated sequence, applied left to right (e.g. `H,S,RZ(0.5)`).
    #[arg(long, required = true, value_delimiter = ',')]
    pub gate: Vec<String>,
    /// `a0re,a0im,a1re,a1im`; normalized before use.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_floats::<4>)]
    pub state: [f64; 4],
    /// Angle for rotations written without one.
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct ElementArgs {
    #[arg(long, conflicts_with = "su2", required_unless_present = "su2")]
    pub gate: Option<String>,
    /// `αre,αim,βre,βim`; normalized before use.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_floats::<4>)]
    pub su2: Option<[f64; 4]>,
    /// Angle for a rotation gate written without one.
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct RepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub element: ElementArgs,
    /// Twice the spin, `n = 2l ≤ 40`.
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_parser = str::parse::<Basis>, default_value = "orthonormal")]
    pub basis: Basis,
}

#[derive(Args, Debug, Serialize)]
pub struct DmatrixArgs {
    #[arg(long)]
    pub n: u32,
    /// `θ₃,θ₂,θ₃′`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_floats::<3>)]
    pub euler: [f64; 3],
    /// Cross-validate against the binomial-expansion oracle (n ≤ 8).
    #[arg(long)]
    pub check: bool,
    /// Use the corrected row normalization.
    #[arg(long)]
    pub corrected: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct Fig1Args {
    /// Random sphere points to include alongside the fixed points.
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {}", parts.len()));
    }
    let mut out = [0.0f64; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.trim().parse().map_err(|e| format!("`{part}`: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("`{part}` is not finite"));
        }
    }
    Ok(out)
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
}

impl From<holoqubit::Error> for Failure {
    fn from(e: holoqubit::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Verdict of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    OracleMismatch,
    CheckFailed,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::OracleMismatch => 3,
            Status::CheckFailed => 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match commands::run(&cli) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match cli.format {
        Format::Json => write_json(io::stdout().lock(), &outcome.envelope).map_err(|e| e.to_string()),
        Format::Csv => match &outcome.csv {
            Some(payload) => write_csv(io::stdout().lock(), payload).map_err(|e| e.to_string()),
            None => {
                eprintln!("error: `{}` has no csv form; use --format json", outcome.envelope.command);
                return ExitCode::from(2);
            }
        },
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::FAILURE;
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    ExitCode::from(outcome.status.code())
}

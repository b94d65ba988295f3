//! `hyperball eval` samples a kernel on a grid of second arguments;
//! `hyperball verify` runs the audit checks and writes one JSON report each.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperball::Complex64;

mod config;
mod eval;
mod grid;
mod verify;

const GRID_HELP: &str = "Second-argument grid: `radial:start:stop:count` puts w = (r,0,..) at count \
evenly spaced radii; `list:v1,v2,...` lists points, components of one point separated by ';'";

#[derive(Parser, Debug)]
#[command(name = "hyperball", version, about = "Spectral kernels of the magnetic Laplacian on the complex ball")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one kernel on a grid and write CSV or JSON.
    Eval {
        /// heat | wave | resolvent | density | projector | green | poisson
        kind: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        scalars: Scalars,
    },
    /// Run a named check (or `all`) and write JSON reports.
    Verify {
        /// Check name or `all`.
        check: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        scalars: Scalars,
        /// x = sinh² d for the checks that take it.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (eval) or directory (verify).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long = "lambda-max")]
    pub lambda_max: Option<f64>,
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Scalars {
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Complex, e.g. `2`, `1.5-0.5i`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub xi: Option<Complex64>,
    /// Complex, e.g. `5i`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub mu: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    #[arg(long)]
    pub j: Option<usize>,
    /// Complex spectral parameter of the Poisson kernel.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub lambda: Option<Complex64>,
    /// First point, components separated by ','; `0` is the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Second point, as --z.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    #[arg(long = "w-grid", help = GRID_HELP)]
    pub w_grid: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().replace(' ', "");
    t.parse::<Complex64>().map_err(|_| format!("cannot parse `{s}` as a complex number"))
}

/// Input problems, reported with the offending flag and exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Eval { kind, common, scalars } => eval::run(&kind, &common, &scalars),
        Command::Verify { check, common, scalars, x } => verify::run(&check, &common, &scalars, x),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

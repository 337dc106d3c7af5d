use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "conics",
    version,
    about = "Conics through two points on complete intersections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Cli {
    pub fn output_format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fiber type, dimension, canonical class and conic count of a type.
    Fiber(FiberArgs),
    /// Number of conics through two general points.
    Count(CountArgs),
    /// Derive the boundary divisor class by Grothendieck-Riemann-Roch.
    Grr(GrrArgs),
    /// Tabulate all types within bounds.
    Scan(ScanArgs),
    /// Numeric count of conics on random cubic threefolds.
    Oracle(OracleArgs),
}

/// Degree list given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees(pub Vec<u32>);

/// Comma-separated degrees such as `2,3` or `(2,3)`.
pub fn parse_degrees(s: &str) -> Result<Degrees, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    if inner.trim().is_empty() {
        return Err("expected at least one degree".into());
    }
    inner
        .split(',')
        .map(|part| match part.trim().parse::<u32>() {
            Ok(0) => Err("degrees must be positive".to_string()),
            Ok(d) => Ok(d),
            Err(_) => Err(format!("`{}` is not a degree", part.trim())),
        })
        .collect::<Result<_, _>>()
        .map(Degrees)
}

#[derive(Args, Debug)]
pub struct FiberArgs {
    /// Degrees of the defining equations, e.g. `3` or `2,3`.
    #[arg(long = "type", value_parser = parse_degrees)]
    pub degrees: Degrees,
    /// Ambient dimension; defaults to the main-theorem bound.
    #[arg(long)]
    pub ambient: Option<u32>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Degrees of the defining equations, e.g. `3` or `2,3`.
    #[arg(long = "type", value_parser = parse_degrees)]
    pub degrees: Degrees,
}

#[derive(Args, Debug)]
pub struct GrrArgs {
    /// Print the degree-2 term in the `c1w`, `z` presentation.
    #[arg(long)]
    pub show_series: bool,
    /// Also check `pi_*(c1(omega)^2) = -2 lambda`.
    #[arg(long)]
    pub verify_corollary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AmbientRule {
    Minimal,
    Explicit,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_codim: u32,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value_t = AmbientRule::Minimal)]
    pub ambient_rule: AmbientRule,
    /// Ambient dimension for every row under `--ambient-rule explicit`.
    #[arg(long, required_if_eq("ambient_rule", "explicit"))]
    pub ambient: Option<u32>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub runs: u32,
    /// Seed of the first run; run `i` uses `seed + i`.
    #[arg(long, env = "CONICS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub initial_step: Option<f64>,
    #[arg(long)]
    pub min_step: Option<f64>,
    #[arg(long)]
    pub max_step: Option<f64>,
    #[arg(long)]
    pub success_residual: Option<f64>,
}

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perturba::experiments::Method;
use perturba::hamiltonian::BasisCut;
use perturba::OperatorTag;

#[derive(Debug, Parser)]
#[command(
    name = "perturba",
    version,
    about = "Perturbation-theory eigensolver benchmarks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Oscillator with a linear perturbation `βξ`.
    Linear(LinearArgs),
    /// Oscillator with a quartic perturbation `βξ⁴`.
    Quartic(QuarticArgs),
    /// Two oscillators coupled by `βξ₁ξ₂`.
    Osc2d(Osc2dArgs),
    /// Oscillator matrix elements as `n,m,value` CSV.
    Elements(ElementsArgs),
    /// Dump a Hamiltonian matrix in text form.
    Matrix(MatrixArgs),
}

/// `off`, `auto` or a number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Setting {
    Off,
    Auto,
    Value(f64),
}

impl FromStr for Setting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "off" => Ok(Setting::Off),
            "auto" | "on" => Ok(Setting::Auto),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Setting::Value)
                .ok_or_else(|| format!("expected off, auto or a number, got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CutArg {
    Triangular,
    Square,
}

impl From<CutArg> for BasisCut {
    fn from(c: CutArg) -> Self {
        match c {
            CutArg::Triangular => BasisCut::Triangular,
            CutArg::Square => BasisCut::Square,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Linear,
    Quartic,
    Osc2d,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

fn parse_op(s: &str) -> Result<OperatorTag, String> {
    s.parse::<OperatorTag>().map_err(|e| e.to_string())
}

fn parse_beta(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("invalid beta '{s}'"))
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Relative energy tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub energy_tol: f64,
    /// Relative coefficient tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub coeff_tol: f64,
    /// Iteration cap for the iterative method.
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    /// Highest RSPT order.
    #[arg(long, default_value_t = 1000)]
    pub max_order: usize,
    /// Number of leading states to solve.
    #[arg(long)]
    pub states: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LinearArgs {
    /// Comma-separated perturbation strengths.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_beta)]
    pub beta: Vec<f64>,
    #[arg(long, default_value_t = 30)]
    pub dim: usize,
    /// rspt, iter or oracle.
    #[arg(long, default_value = "iter", value_parser = parse_method)]
    pub method: Method,
    /// Transform `S = Aξ`: `off`, `auto` (`A = β`) or a value.
    #[arg(long, default_value = "off")]
    pub synthetic_a: Setting,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct QuarticArgs {
    /// Comma-separated perturbation strengths.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_beta)]
    pub beta: Vec<f64>,
    /// Matrix dimension, at most 500.
    #[arg(long, default_value_t = 100)]
    pub dim: usize,
    /// rspt, iter or oracle.
    #[arg(long, default_value = "iter", value_parser = parse_method)]
    pub method: Method,
    /// Transform `S = A₂ξ² + A₃|ξ|³`: `off`, `auto` (0 at β = 0, −0.35 up
    /// to β = 0.5, −0.375 above) or a value of `A₂`.
    #[arg(long, default_value = "off")]
    pub a2: Setting,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct Osc2dArgs {
    /// Comma-separated perturbation strengths in `[0, 1]`.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_beta)]
    pub beta: Vec<f64>,
    /// Highest `n₁ + n₂` (or `max(n₁, n₂)` for the square cut), at most 39.
    #[arg(long, default_value_t = 39)]
    pub nmax: usize,
    /// rspt, iter or oracle.
    #[arg(long, default_value = "iter", value_parser = parse_method)]
    pub method: Method,
    /// Transform `S = (β/2) ξ₁ξ₂`.
    #[arg(long, value_enum, default_value = "off")]
    pub synthetic: Toggle,
    /// Basis truncation.
    #[arg(long, value_enum, default_value = "triangular")]
    pub cut: CutArg,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct ElementsArgs {
    /// xi, xi2, xi3, xi4, lxi or lxi3.
    #[arg(long, value_parser = parse_op)]
    pub op: OperatorTag,
    /// Largest quantum number, at most 500.
    #[arg(long)]
    pub max_n: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    /// Perturbation strength.
    #[arg(long, value_parser = parse_beta)]
    pub beta: f64,
    /// Matrix dimension, or `n_max` for osc2d.
    #[arg(long)]
    pub size: usize,
    /// Transform parameter (`A` or `A₂`): `off`, `auto` or a value.
    #[arg(long, default_value = "off")]
    pub transform: Setting,
    /// Basis truncation for osc2d.
    #[arg(long, value_enum, default_value = "triangular")]
    pub cut: CutArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

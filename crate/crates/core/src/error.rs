use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric: |H[{row},{col}] - H[{col},{row}]| = {defect:e}")]
    NonSymmetric { row: usize, col: usize, defect: f64 },

    #[error(
        "Jacobi sweeps did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("state index {index} out of range for dimension {dim}")]
    StateOutOfRange { index: usize, dim: usize },

    #[error("degenerate diagonal: H[{k},{k}] == H[{l},{l}], RSPT denominator vanishes")]
    DegenerateDiagonal { k: usize, l: usize },

    #[error("perturbation series diverged at order {order} for state {state} (|correction| = {magnitude:e})")]
    Diverged {
        state: usize,
        order: usize,
        magnitude: f64,
    },

    #[error("oscillator index ({n},{m}) beyond table limit {limit}")]
    IndexOutOfRange { n: usize, m: usize, limit: usize },

    #[error("element table covers n <= {available}, need n <= {required}")]
    TableTooSmall { required: usize, available: usize },

    #[error("beta = {beta} outside valid range {range}")]
    BetaOutOfRange { beta: f64, range: &'static str },

    #[error("no tabulated value for n = {n}, beta = {beta}")]
    NotTabulated { n: usize, beta: f64 },

    #[error("unsupported problem: {0}")]
    UnsupportedProblem(&'static str),

    #[error("structure violation in {matrix} at ({row},{col}): {detail}")]
    StructureViolation {
        matrix: &'static str,
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

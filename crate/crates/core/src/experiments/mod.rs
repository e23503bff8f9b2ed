//! Exact reference energies, wavefunction back-transform and the benchmark
//! harness.

mod harness;
mod wavefunction;

pub use harness::{
    convergence_frontier, run_instance, write_csv, Method, ProblemInstance, RunResult,
    SolverConfig, StateResult, CSV_HEADER,
};
pub use wavefunction::{
    backtransform_wavefunction, default_grid, transform_exponent, trapezoid,
    DEFAULT_GRID_HALF_WIDTH, DEFAULT_GRID_POINTS,
};

use crate::error::{Error, Result};
use crate::hamiltonian::build_quartic_true;
use crate::jacobi::jacobi_diagonalize;

/// Dimension of the truncated true quartic Hamiltonian used as an oracle.
pub const QUARTIC_ORACLE_DIM: usize = 200;

/// Convergence tolerance handed to the Jacobi oracle.
pub const ORACLE_TOL: f64 = 1e-14;

/// `E_n = n + ½ − β²/2` for `h₀ + βξ`.
pub fn exact_linear_energy(n: usize, beta: f64) -> f64 {
    n as f64 + 0.5 - 0.5 * beta * beta
}

/// `E = √(1+β)(n₁+½) + √(1−β)(n₂+½)` for `h₀(ξ₁) + h₀(ξ₂) + βξ₁ξ₂`,
/// valid for `0 ≤ β ≤ 1`.
pub fn exact_2d_energy(n1: usize, n2: usize, beta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::BetaOutOfRange {
            beta,
            range: "0 <= beta <= 1",
        });
    }
    Ok((1.0 + beta).sqrt() * (n1 as f64 + 0.5) + (1.0 - beta).sqrt() * (n2 as f64 + 0.5))
}

/// Reference energies of `h₀ + βξ⁴` for `n = 0..7` to five significant digits;
/// `None` marks states that did not converge in the 100-state synthetic
/// calculation.
#[rustfmt::skip]
pub const QUARTIC_TABLE: [(f64, [Option<f64>; 8]); 17] = [
    (0.00, row([0.50000, 1.5000, 2.5000, 3.5000, 4.5000, 5.5000, 6.5000, 7.5000])),
    (0.05, row([0.53264, 1.6534, 2.8740, 4.1763, 5.5493, 6.9850, 8.4774, 10.022])),
    (0.10, row([0.55915, 1.7695, 3.1386, 4.6289, 6.2203, 7.8998, 9.6578, 11.487])),
    (0.15, row([0.58202, 1.8662, 3.3529, 4.9877, 6.7444, 8.6065, 10.562, 12.602])),
    (0.20, row([0.60240, 1.9505, 3.5363, 5.2913, 7.1845, 9.1963, 11.313, 13.525])),
    (0.25, row([0.62093, 2.0260, 3.6985, 5.5576, 7.5684, 9.7091, 11.965, 14.323])),
    (0.30, row([0.63799, 2.0946, 3.8448, 5.7966, 7.9118, 10.166, 12.544, 15.033])),
    (0.40, partial([0.66877, 2.2169, 4.1028, 6.2156, 8.5114, 10.963, 13.552], 7)),
    (0.50, partial([0.69617, 2.3244, 4.3275, 6.5784, 9.0288, 11.649, 14.418], 7)),
    (0.60, partial([0.72104, 2.4210, 4.5281, 6.9011, 9.4877, 12.256, 0.0], 6)),
    (0.70, partial([0.74390, 2.5092, 4.7103, 7.1933, 9.9026, 0.0, 0.0], 5)),
    (0.80, partial([0.76514, 2.5907, 4.8779, 7.4614, 10.283, 0.0, 0.0], 5)),
    (0.90, partial([0.78503, 2.6666, 5.0336, 7.7101, 10.635, 0.0, 0.0], 5)),
    (1.00, partial([0.80377, 2.7379, 5.1793, 7.9424, 0.0, 0.0, 0.0], 4)),
    (1.20, partial([0.83840, 2.8690, 5.4464, 8.3675, 0.0, 0.0, 0.0], 4)),
    (1.40, partial([0.86996, 2.9878, 5.6876, 8.7508, 0.0, 0.0, 0.0], 4)),
    (1.60, partial([0.89907, 3.0969, 5.9085, 0.0, 0.0, 0.0, 0.0], 3)),
];

const fn row(v: [f64; 8]) -> [Option<f64>; 8] {
    let mut out = [None; 8];
    let mut i = 0;
    while i < 8 {
        out[i] = Some(v[i]);
        i += 1;
    }
    out
}

const fn partial(v: [f64; 7], count: usize) -> [Option<f64>; 8] {
    let mut out = [None; 8];
    let mut i = 0;
    while i < count {
        out[i] = Some(v[i]);
        i += 1;
    }
    out
}

/// Tabulated quartic energy for state `n` at `beta`.
pub fn quartic_table_energy(n: usize, beta: f64) -> Result<f64> {
    QUARTIC_TABLE
        .iter()
        .find(|(b, _)| (b - beta).abs() < 1e-9)
        .and_then(|(_, values)| values.get(n).copied().flatten())
        .ok_or(Error::NotTabulated { n, beta })
}

/// Ascending eigenvalues of the true quartic Hamiltonian truncated to `dim`.
pub fn quartic_oracle_energies(beta: f64, dim: usize) -> Result<Vec<f64>> {
    Ok(jacobi_diagonalize(&build_quartic_true(beta, dim)?, ORACLE_TOL)?.eigenvalues)
}

/// Quartic energy of state `n` from the [`QUARTIC_ORACLE_DIM`]-state oracle.
pub fn quartic_reference_energy(n: usize, beta: f64) -> Result<f64> {
    if n >= QUARTIC_ORACLE_DIM / 2 {
        return Err(Error::InvalidArgument(format!(
            "state {n} is too close to the oracle truncation"
        )));
    }
    Ok(quartic_oracle_energies(beta, QUARTIC_ORACLE_DIM)?[n])
}

//! Recovering true wavefunctions from synthetic-Hamiltonian eigenvectors.

use crate::error::{Error, Result};
use crate::hamiltonian::{quartic_a3, SyntheticSpec};
use crate::oscillator::wavefunctions;
use crate::solution::PerturbationSolution;

pub const DEFAULT_GRID_POINTS: usize = 2048;
pub const DEFAULT_GRID_HALF_WIDTH: f64 = 12.0;

/// Uniform grid of [`DEFAULT_GRID_POINTS`] points on `[−12, 12]`.
pub fn default_grid() -> Vec<f64> {
    let n = DEFAULT_GRID_POINTS;
    let step = 2.0 * DEFAULT_GRID_HALF_WIDTH / (n - 1) as f64;
    (0..n)
        .map(|i| -DEFAULT_GRID_HALF_WIDTH + i as f64 * step)
        .collect()
}

/// Trapezoid-rule integral of `values` sampled on `grid`.
pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// `S(ξ)` for a one-dimensional transform.
pub fn transform_exponent(spec: &SyntheticSpec, xi: f64) -> Result<f64> {
    match *spec {
        SyntheticSpec::Linear { a, .. } => Ok(a * xi),
        SyntheticSpec::Quartic { beta, a2 } => {
            Ok(a2 * xi * xi + quartic_a3(beta) * xi.abs().powi(3))
        }
        SyntheticSpec::Coupled2D { .. } => Err(Error::UnsupportedProblem(
            "wavefunctions are only reconstructed for one-dimensional problems",
        )),
    }
}

/// `Ψ(ξ) = e^{−S(ξ)} Σ_l C_l ψ_l(ξ)` on `grid`, scaled to unit trapezoid norm.
pub fn backtransform_wavefunction(
    spec: &SyntheticSpec,
    solution: &PerturbationSolution,
    grid: &[f64],
) -> Result<Vec<f64>> {
    if grid.len() < 2 {
        return Err(Error::InvalidArgument(
            "grid needs at least two points".into(),
        ));
    }
    if let Some(i) = grid.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { row: i, col: 0 });
    }
    transform_exponent(spec, 0.0)?;
    let coeffs = &solution.coefficients;
    if coeffs.is_empty() {
        return Err(Error::InvalidArgument(
            "solution has no coefficients".into(),
        ));
    }
    let max_n = coeffs.len() - 1;
    let mut basis = Vec::with_capacity(coeffs.len());
    let mut psi = Vec::with_capacity(grid.len());
    for &xi in grid {
        wavefunctions(max_n, xi, &mut basis);
        let sum: f64 = coeffs.iter().zip(&basis).map(|(c, p)| c * p).sum();
        psi.push((-transform_exponent(spec, xi)?).exp() * sum);
    }
    let squares: Vec<f64> = psi.iter().map(|p| p * p).collect();
    let norm = trapezoid(grid, &squares).sqrt();
    if !norm.is_finite() || norm <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "wavefunction norm is {norm}"
        )));
    }
    for p in &mut psi {
        *p /= norm;
    }
    Ok(psi)
}

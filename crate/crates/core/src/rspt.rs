//! Rayleigh–Schrödinger perturbation theory on a raw Hamiltonian matrix.
//!
//! The zeroth-order energies are the diagonal elements themselves
//! (`E⁰_k = H_kk`), so the perturbation is purely off-diagonal, the first
//! order energy correction vanishes and the denominators are `H_kk − H_ll`.
//!
//! Order `α` produces the energy correction `E^(α) = Σ_l W_kl C^(α−1)_lk` and
//! the coefficient correction
//!
//! ```text
//! C^(1)_lk = W_lk / Δ_kl
//! C^(α)_lk = [ Σ_{j≠k} W_lj C^(α−1)_jk − Σ_{β=1}^{α−1} C^(α−β)_lk E^(β) ] / Δ_kl
//! ```
//!
//! Every order needs the full coefficient history, unlike the iterative solver.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::solution::{PerturbationSolution, Status};

/// Any single correction larger than this aborts the series.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsptConfig {
    pub energy_tol: f64,
    pub coeff_tol: f64,
    pub max_order: usize,
}

impl Default for RsptConfig {
    fn default() -> Self {
        Self {
            energy_tol: 1e-10,
            coeff_tol: 1e-10,
            max_order: 1000,
        }
    }
}

impl RsptConfig {
    /// Config that stops after `order` without requiring convergence.
    pub fn truncated(order: usize) -> Self {
        Self {
            max_order: order,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if [self.energy_tol, self.coeff_tol]
            .iter()
            .any(|t| t.is_nan() || *t <= 0.0)
        {
            return Err(Error::InvalidArgument(
                "RSPT tolerances must be positive".into(),
            ));
        }
        if self.max_order < 2 {
            return Err(Error::InvalidArgument(format!(
                "RSPT max_order must be at least 2, got {}",
                self.max_order
            )));
        }
        Ok(())
    }
}

/// States coupled to `k` through any chain of nonzero off-diagonal elements.
/// Coefficients outside this set stay exactly zero at every order.
fn coupled_states(h: &DenseMatrix, k: usize) -> Vec<bool> {
    let n = h.dim();
    let mut seen = vec![false; n];
    seen[k] = true;
    let mut stack = vec![k];
    while let Some(j) = stack.pop() {
        for l in 0..n {
            if !seen[l] && (h[(l, j)] != 0.0 || h[(j, l)] != 0.0) {
                seen[l] = true;
                stack.push(l);
            }
        }
    }
    seen
}

/// Solves for state `k`, summing the series until both relative tests pass
/// or `cfg.max_order` is reached.
pub fn rspt_solve(h: &DenseMatrix, k: usize, cfg: &RsptConfig) -> Result<PerturbationSolution> {
    cfg.validate()?;
    let n = h.dim();
    if k >= n {
        return Err(Error::StateOutOfRange { index: k, dim: n });
    }
    let hkk = h[(k, k)];
    let active: Vec<usize> = coupled_states(h, k)
        .iter()
        .enumerate()
        .filter(|&(l, &on)| on && l != k)
        .map(|(l, _)| l)
        .collect();
    let mut inv_gap = vec![0.0; n];
    for &l in &active {
        let gap = hkk - h[(l, l)];
        if gap == 0.0 {
            return Err(Error::DegenerateDiagonal { k, l });
        }
        inv_gap[l] = 1.0 / gap;
    }

    // history[α] = C^(α); history[0] is the unit vector.
    let mut history: Vec<Vec<f64>> = Vec::with_capacity(cfg.max_order.min(64) + 1);
    let mut unit = vec![0.0; n];
    unit[k] = 1.0;
    history.push(unit);
    // energy_corr[β] = E^(β); index 0 unused.
    let mut energy_corr = vec![0.0];
    let mut energy = hkk;
    let mut total = vec![0.0; n];

    for order in 1..=cfg.max_order {
        let prev = &history[order - 1];
        let e_corr: f64 = active.iter().map(|&l| h[(k, l)] * prev[l]).sum();
        energy += e_corr;
        energy_corr.push(e_corr);
        check_magnitude(e_corr, k, order)?;

        let mut next = vec![0.0; n];
        for &l in &active {
            let value = if order == 1 {
                h[(l, k)] * inv_gap[l]
            } else {
                let row = h.row(l);
                let mut acc = 0.0;
                for &j in &active {
                    if j != l {
                        acc += row[j] * prev[j];
                    }
                }
                for beta in 1..order {
                    acc -= history[order - beta][l] * energy_corr[beta];
                }
                acc * inv_gap[l]
            };
            check_magnitude(value, k, order)?;
            next[l] = value;
            total[l] += value;
        }

        let energy_done = e_corr.abs() <= cfg.energy_tol * energy.abs();
        let coeffs_done = active
            .iter()
            .all(|&l| next[l].abs() <= cfg.coeff_tol * total[l].abs());
        history.push(next);
        if energy_done && coeffs_done {
            return Ok(PerturbationSolution::new(
                k,
                energy,
                total,
                order,
                Status::Converged,
            ));
        }
    }
    Ok(PerturbationSolution::new(
        k,
        energy,
        total,
        cfg.max_order,
        Status::MaxIterationsExceeded,
    ))
}

fn check_magnitude(x: f64, state: usize, order: usize) -> Result<()> {
    if !x.is_finite() || x.abs() > DIVERGENCE_LIMIT {
        Err(Error::Diverged {
            state,
            order,
            magnitude: x.abs(),
        })
    } else {
        Ok(())
    }
}

/// Solves every state independently. A state whose series diverges or hits a
/// zero denominator is reported with [`Status::AlgorithmFailure`] and its
/// zeroth-order energy; the other states are unaffected.
pub fn rspt_solve_all(h: &DenseMatrix, cfg: &RsptConfig) -> Vec<PerturbationSolution> {
    rspt_solve_states(h, 0..h.dim(), cfg)
}

pub fn rspt_solve_states(
    h: &DenseMatrix,
    states: impl IntoIterator<Item = usize>,
    cfg: &RsptConfig,
) -> Vec<PerturbationSolution> {
    let states: Vec<usize> = states.into_iter().collect();
    states
        .par_iter()
        .map(|&k| {
            rspt_solve(h, k, cfg).unwrap_or_else(|_| {
                PerturbationSolution::new(
                    k,
                    h[(k, k)],
                    vec![0.0; h.dim()],
                    0,
                    Status::AlgorithmFailure,
                )
            })
        })
        .collect()
}

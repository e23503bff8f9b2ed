//! Quadratic fixed-point iteration for one eigenstate at a time.
//!
//! With `C_kk = 1`, the eigenvalue equation for row `l` becomes a quadratic in
//! `C_lk`:
//!
//! ```text
//! W_kl C_lk² + Δ_kl C_lk − Y_lk = 0
//! Y_lk = W_lk + Σ_{j≠k,l} (W_lj − C_lk W_kj) C_jk
//! ```
//!
//! Each sweep evaluates `Y` from the previous column and takes the root
//! `C_lk = s_kl Y_lk / ((√q + |Δ_kl|) / 2)`, `q = Δ_kl² + 4 W_kl Y_lk`, which
//! reduces to second-order RSPT for weak coupling and stays finite when
//! `Δ_kl = 0`. The energy is `H_kk + Σ_l W_kl C_lk`.
//!
//! Only the current and previous columns are stored.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::solution::{PerturbationSolution, Status};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterConfig {
    pub energy_tol: f64,
    pub coeff_tol: f64,
    pub max_iter: usize,
    /// Gaps with `|Δ_kl|` at or below this are treated as degenerate.
    pub zero_gap_threshold: f64,
}

impl Default for IterConfig {
    fn default() -> Self {
        Self {
            energy_tol: 1e-10,
            coeff_tol: 1e-10,
            max_iter: 10_000,
            zero_gap_threshold: 1e-20,
        }
    }
}

impl IterConfig {
    pub fn validate(&self) -> Result<()> {
        if [self.energy_tol, self.coeff_tol]
            .iter()
            .any(|t| t.is_nan() || *t <= 0.0)
        {
            return Err(Error::InvalidArgument(
                "iteration tolerances must be positive".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        if self.zero_gap_threshold.is_nan() || self.zero_gap_threshold < 0.0 {
            return Err(Error::InvalidArgument(
                "zero_gap_threshold must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Root-selection sign: `sign(Δ_kl)` for a real gap, `sign(k − l)` for a
/// degenerate pair.
#[inline]
pub fn root_sign(k: usize, l: usize, gap: f64, zero_gap_threshold: f64) -> f64 {
    if gap.abs() > zero_gap_threshold {
        gap.signum()
    } else if k > l {
        1.0
    } else {
        -1.0
    }
}

/// Solves for state `k`.
///
/// Outcomes other than convergence are reported through
/// [`PerturbationSolution::status`]: a discriminant that is negative (or NaN)
/// while `W_kl = 0`, or a non-finite iterate, gives
/// [`Status::AlgorithmFailure`]. For finite input `q ≥ Δ² ≥ 0` whenever
/// `W_kl = 0`, so in practice that branch only catches overflow.
/// Errors are returned only for invalid arguments.
pub fn iterate_solve(h: &DenseMatrix, k: usize, cfg: &IterConfig) -> Result<PerturbationSolution> {
    cfg.validate()?;
    let n = h.dim();
    if k >= n {
        return Err(Error::StateOutOfRange { index: k, dim: n });
    }
    let hkk = h[(k, k)];
    let row_k = h.row(k);

    let gaps: Vec<f64> = (0..n).map(|l| hkk - h[(l, l)]).collect();
    let signs: Vec<f64> = (0..n)
        .map(|l| root_sign(k, l, gaps[l], cfg.zero_gap_threshold))
        .collect();

    // coefficient column with C_kk held at 0 during the sweep
    let mut current = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut energy = hkk;

    for iteration in 1..=cfg.max_iter {
        // Σ_{j≠k} W_kj C_jk, reused for every row
        let eps: f64 = (0..n)
            .filter(|&j| j != k)
            .map(|j| row_k[j] * current[j])
            .sum();

        for l in 0..n {
            if l == k {
                continue;
            }
            let c_lk = current[l];
            let row_l = h.row(l);
            let mut coupled = 0.0;
            for (j, (&hlj, &cj)) in row_l.iter().zip(&current).enumerate() {
                if j != l && j != k {
                    coupled += hlj * cj;
                }
            }
            let y = row_l[k] + coupled - c_lk * (eps - row_k[l] * c_lk);

            let gap = gaps[l];
            let w_kl = row_k[l];
            let q = gap * gap + 4.0 * w_kl * y;
            next[l] = if q >= 0.0 {
                let half = (q.sqrt() + gap.abs()) / 2.0;
                if half != 0.0 {
                    signs[l] * y / half
                } else {
                    signs[l]
                }
            } else if w_kl != 0.0 {
                -gap / (2.0 * w_kl)
            } else {
                return Ok(PerturbationSolution::new(
                    k,
                    energy,
                    current,
                    iteration,
                    Status::AlgorithmFailure,
                ));
            };
        }

        let mut unconverged = false;
        let mut new_energy = hkk;
        for l in 0..n {
            if l == k {
                continue;
            }
            let (old, new) = (current[l], next[l]);
            if (old - new).abs() > cfg.coeff_tol * (old + new).abs() / 2.0 {
                unconverged = true;
            }
            new_energy += row_k[l] * new;
        }
        std::mem::swap(&mut current, &mut next);
        let old_energy = energy;
        energy = new_energy;
        if !energy.is_finite() || current.iter().any(|c| !c.is_finite()) {
            return Ok(PerturbationSolution::new(
                k,
                energy,
                current,
                iteration,
                Status::AlgorithmFailure,
            ));
        }
        if (energy - old_energy).abs() > cfg.energy_tol * (energy + old_energy).abs() / 2.0 {
            unconverged = true;
        }
        if !unconverged {
            return Ok(PerturbationSolution::new(
                k,
                energy,
                current,
                iteration,
                Status::Converged,
            ));
        }
    }
    Ok(PerturbationSolution::new(
        k,
        energy,
        current,
        cfg.max_iter,
        Status::MaxIterationsExceeded,
    ))
}

/// Solves every state of `h`, each independently of the others.
pub fn iterate_solve_all(h: &DenseMatrix, cfg: &IterConfig) -> Result<Vec<PerturbationSolution>> {
    iterate_solve_states(h, 0..h.dim(), cfg)
}

/// Solves the listed states; results come back in the order given.
pub fn iterate_solve_states(
    h: &DenseMatrix,
    states: impl IntoIterator<Item = usize>,
    cfg: &IterConfig,
) -> Result<Vec<PerturbationSolution>> {
    let states: Vec<usize> = states.into_iter().collect();
    states
        .par_iter()
        .map(|&k| iterate_solve(h, k, cfg))
        .collect()
}

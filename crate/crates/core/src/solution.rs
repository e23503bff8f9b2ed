use std::fmt;

use crate::matrix::norm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Converged,
    MaxIterationsExceeded,
    AlgorithmFailure,
}

impl Status {
    pub fn is_converged(self) -> bool {
        self == Status::Converged
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxIterationsExceeded => "max_iterations",
            Status::AlgorithmFailure => "failure",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of solving for a single eigenstate.
///
/// `coefficients` keeps the intermediate normalization `C[k] = 1`;
/// `normalized_coefficients` is the same column scaled to unit length.
#[derive(Debug, Clone)]
pub struct PerturbationSolution {
    pub state: usize,
    pub energy: f64,
    pub coefficients: Vec<f64>,
    pub normalized_coefficients: Vec<f64>,
    /// Iterations for the iterative method, perturbation order for RSPT.
    pub iterations: usize,
    pub status: Status,
}

impl PerturbationSolution {
    /// Assembles a solution from a coefficient column whose `state` entry is
    /// overwritten with 1.
    pub(crate) fn new(
        state: usize,
        energy: f64,
        mut coefficients: Vec<f64>,
        iterations: usize,
        status: Status,
    ) -> Self {
        coefficients[state] = 1.0;
        let n = norm(&coefficients);
        let normalized_coefficients = if n.is_finite() && n > 0.0 {
            coefficients.iter().map(|c| c / n).collect()
        } else {
            let mut unit = vec![0.0; coefficients.len()];
            unit[state] = 1.0;
            unit
        };
        Self {
            state,
            energy,
            coefficients,
            normalized_coefficients,
            iterations,
            status,
        }
    }

    pub fn is_converged(&self) -> bool {
        self.status.is_converged()
    }
}

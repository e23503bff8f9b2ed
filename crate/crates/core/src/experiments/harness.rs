//! Problem instances, solver dispatch and CSV output.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hamiltonian::{
    build_2d_synthetic, build_linear_synthetic, build_quartic_synthetic, build_quartic_true,
    BasisCut, BasisMap2D, Problem, SyntheticSpec,
};
use crate::iterative::{iterate_solve_states, IterConfig};
use crate::jacobi::jacobi_diagonalize;
use crate::matrix::{residual_norm, DenseMatrix};
use crate::oscillator::{cached_table, OperatorTag};
use crate::rspt::{rspt_solve_states, RsptConfig};
use crate::solution::Status;
use crate::text::format_f64;

use super::{exact_2d_energy, exact_linear_energy, ORACLE_TOL};

pub const CSV_HEADER: &str =
    "problem,beta,dim,method,transform,state,energy,status,iterations,residual";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Rspt,
    Iterative,
    /// Full Jacobi diagonalization; true Hamiltonians only.
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Rspt => "rspt",
            Method::Iterative => "iter",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rspt" => Ok(Method::Rspt),
            "iter" | "iterative" => Ok(Method::Iterative),
            "oracle" | "jacobi" => Ok(Method::Oracle),
            _ => Err(Error::InvalidArgument(format!("unknown method '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolverConfig {
    pub rspt: RsptConfig,
    pub iter: IterConfig,
}

/// One benchmark run: a matrix, a method and the states to solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub problem: Problem,
    pub beta: f64,
    /// Matrix dimension for the 1-D problems, `n_max` for the coupled problem.
    pub size: usize,
    pub cut: BasisCut,
    pub method: Method,
    pub transform: Option<SyntheticSpec>,
    /// Number of leading states to solve; all states when `None`.
    pub states: Option<usize>,
    pub config: SolverConfig,
}

impl ProblemInstance {
    pub fn new(problem: Problem, beta: f64, size: usize, method: Method) -> Self {
        Self {
            problem,
            beta,
            size,
            cut: BasisCut::Triangular,
            method,
            transform: None,
            states: None,
            config: SolverConfig::default(),
        }
    }

    pub fn with_transform(mut self, spec: SyntheticSpec) -> Self {
        self.transform = Some(spec);
        self
    }

    pub fn with_states(mut self, count: usize) -> Self {
        self.states = Some(count);
        self
    }

    pub fn with_cut(mut self, cut: BasisCut) -> Self {
        self.cut = cut;
        self
    }

    pub fn with_config(mut self, config: SolverConfig) -> Self {
        self.config = config;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "beta must be finite, got {}",
                self.beta
            )));
        }
        if let Some(spec) = &self.transform {
            if spec.problem() != self.problem {
                return Err(Error::InvalidArgument(format!(
                    "{} transform does not fit the {} problem",
                    spec.problem(),
                    self.problem
                )));
            }
            if spec.beta() != self.beta {
                return Err(Error::InvalidArgument(format!(
                    "transform beta {} differs from instance beta {}",
                    spec.beta(),
                    self.beta
                )));
            }
            if self.method == Method::Oracle {
                return Err(Error::InvalidArgument(
                    "the oracle needs a symmetric matrix; drop the transform".into(),
                ));
            }
        }
        if self.states == Some(0) {
            return Err(Error::InvalidArgument(
                "at least one state must be requested".into(),
            ));
        }
        Ok(())
    }

    /// The matrix this instance solves, plus the product basis for the
    /// coupled problem.
    pub fn build_matrix(&self) -> Result<(DenseMatrix, Option<BasisMap2D>)> {
        self.validate()?;
        let beta = self.beta;
        match self.problem {
            Problem::Linear1D => {
                let a = match self.transform {
                    Some(SyntheticSpec::Linear { a, .. }) => a,
                    _ => 0.0,
                };
                Ok((build_linear_synthetic(beta, a, self.size)?, None))
            }
            Problem::Quartic1D => match self.transform {
                Some(SyntheticSpec::Quartic { a2, .. }) => {
                    let table = cached_table(OperatorTag::LambdaXi3, self.size.saturating_sub(1))?;
                    Ok((build_quartic_synthetic(beta, a2, self.size, &table)?, None))
                }
                _ => Ok((build_quartic_true(beta, self.size)?, None)),
            },
            Problem::Coupled2D => {
                let a = match self.transform {
                    Some(SyntheticSpec::Coupled2D { a, .. }) => a,
                    _ => 0.0,
                };
                let (h, basis) = build_2d_synthetic(beta, a, self.size, self.cut)?;
                Ok((h, Some(basis)))
            }
        }
    }

    fn tolerances(&self) -> (f64, f64) {
        match self.method {
            Method::Rspt => (self.config.rspt.energy_tol, self.config.rspt.coeff_tol),
            Method::Iterative => (self.config.iter.energy_tol, self.config.iter.coeff_tol),
            Method::Oracle => (ORACLE_TOL, ORACLE_TOL),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateResult {
    pub state: usize,
    /// `n` for 1-D problems, `n1:n2` for the coupled problem.
    pub label: String,
    pub energy: f64,
    pub status: Status,
    pub iterations: usize,
    pub residual: f64,
    /// Closed-form energy where one exists.
    pub exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub problem: Problem,
    pub beta: f64,
    pub dim: usize,
    pub method: Method,
    /// `none` or the transform parameters.
    pub transform: String,
    pub energy_tol: f64,
    pub coeff_tol: f64,
    pub states: Vec<StateResult>,
}

impl RunResult {
    pub fn all_converged(&self) -> bool {
        self.states.iter().all(|s| s.status.is_converged())
    }

    /// Largest `n` with states `0..=n` all converged.
    pub fn frontier(&self) -> Option<usize> {
        self.states
            .iter()
            .take_while(|s| s.status.is_converged())
            .count()
            .checked_sub(1)
    }

    fn write_rows(&self, out: &mut String, with_exact: bool) {
        for s in &self.states {
            let mut line = format!(
                "{},{},{},{},{},{},{},{},{},{}",
                self.problem,
                format_f64(self.beta),
                self.dim,
                self.method,
                self.transform,
                s.label,
                format_f64(s.energy),
                s.status,
                s.iterations,
                format_f64(s.residual),
            );
            if with_exact {
                line.push(',');
                if let Some(e) = s.exact {
                    line.push_str(&format_f64(e));
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
}

/// CSV for a batch of runs, rows in the order given. `with_exact` appends an
/// `exact` column (empty where no closed form exists).
pub fn write_csv(results: &[RunResult], with_exact: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if with_exact {
        out.push_str(",exact");
    }
    out.push('\n');
    for r in results {
        r.write_rows(&mut out, with_exact);
    }
    out
}

/// Builds the matrix, runs the chosen method on the requested states and
/// attaches residuals measured against that same matrix.
pub fn run_instance(instance: &ProblemInstance) -> Result<RunResult> {
    let (h, basis) = instance.build_matrix()?;
    let dim = h.dim();
    let count = instance.states.unwrap_or(dim).min(dim);
    let beta = instance.beta;

    let label = |k: usize| match &basis {
        Some(b) => {
            let (n1, n2) = b.state(k);
            format!("{n1}:{n2}")
        }
        None => k.to_string(),
    };
    let exact = |k: usize| match (instance.problem, &basis) {
        (Problem::Linear1D, _) => Some(exact_linear_energy(k, beta)),
        (Problem::Coupled2D, Some(b)) => {
            let (n1, n2) = b.state(k);
            exact_2d_energy(n1, n2, beta).ok()
        }
        _ => None,
    };

    let states: Vec<StateResult> = match instance.method {
        Method::Oracle => {
            let eig = jacobi_diagonalize(&h, ORACLE_TOL)?;
            (0..count)
                .map(|k| {
                    let v = eig.eigenvector(k);
                    let energy = eig.eigenvalues[k];
                    StateResult {
                        state: k,
                        // eigenvalues are ranked, so coupled states carry their rank
                        label: k.to_string(),
                        energy,
                        status: Status::Converged,
                        iterations: 0,
                        residual: residual_norm(&h, energy, &v).unwrap_or(f64::NAN),
                        exact: if basis.is_some() { None } else { exact(k) },
                    }
                })
                .collect()
        }
        Method::Rspt | Method::Iterative => {
            let solutions = if instance.method == Method::Rspt {
                rspt_solve_states(&h, 0..count, &instance.config.rspt)
            } else {
                iterate_solve_states(&h, 0..count, &instance.config.iter)?
            };
            solutions
                .into_iter()
                .map(|s| StateResult {
                    state: s.state,
                    label: label(s.state),
                    energy: s.energy,
                    status: s.status,
                    iterations: s.iterations,
                    residual: residual_norm(&h, s.energy, &s.coefficients).unwrap_or(f64::NAN),
                    exact: exact(s.state),
                })
                .collect()
        }
    };

    let (energy_tol, coeff_tol) = instance.tolerances();
    Ok(RunResult {
        problem: instance.problem,
        beta,
        dim,
        method: instance.method,
        transform: instance
            .transform
            .map_or_else(|| "none".to_string(), |t| t.label()),
        energy_tol,
        coeff_tol,
        states,
    })
}

/// Largest `n` such that states `0..=n` all converge; `None` when the
/// ground state already fails.
pub fn convergence_frontier(instance: &ProblemInstance) -> Result<Option<usize>> {
    Ok(run_instance(instance)?.frontier())
}

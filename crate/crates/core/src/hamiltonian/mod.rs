//! True and synthetic Hamiltonian matrices for the oscillator benchmarks.
//!
//! A synthetic Hamiltonian is `H̃ = e^S H e^{−S}` for a multiplicative `S(ξ)`.
//! In the oscillator basis it splits as `H̃ = H + F − G`, with
//! `F_nm = (E⁰_m − E⁰_n) S_nm` antisymmetric and `G = ½ (dS/dξ)²` symmetric and
//! positive. All builders emit the diagonal in non-decreasing order, which the
//! iterative solver's degenerate sign rule relies on.

mod coupled;
mod structure;

pub use coupled::{build_2d_synthetic, build_2d_true, BasisCut, BasisMap2D};
pub use structure::{verify_fg_structure, FgReport, STRUCTURE_TOL, SYMMETRY_TOL};

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::oscillator::{xi2_element, xi4_element, xi_element, ElementTable, OperatorTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Linear1D,
    Quartic1D,
    Coupled2D,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Linear1D => "linear",
            Problem::Quartic1D => "quartic",
            Problem::Coupled2D => "osc2d",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of the transform function `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SyntheticSpec {
    /// `S = A ξ`.
    Linear { beta: f64, a: f64 },
    /// `S = A₂ ξ² + A₃ |ξ|³` with `A₃ = √(2β)/3`.
    Quartic { beta: f64, a2: f64 },
    /// `S = A ξ₁ ξ₂`.
    Coupled2D { beta: f64, a: f64 },
}

impl SyntheticSpec {
    pub fn problem(&self) -> Problem {
        match self {
            SyntheticSpec::Linear { .. } => Problem::Linear1D,
            SyntheticSpec::Quartic { .. } => Problem::Quartic1D,
            SyntheticSpec::Coupled2D { .. } => Problem::Coupled2D,
        }
    }

    pub fn beta(&self) -> f64 {
        match *self {
            SyntheticSpec::Linear { beta, .. }
            | SyntheticSpec::Quartic { beta, .. }
            | SyntheticSpec::Coupled2D { beta, .. } => beta,
        }
    }

    /// Short label used in CSV output, e.g. `A=0.5` or `A2=-0.35`.
    pub fn label(&self) -> String {
        match *self {
            SyntheticSpec::Linear { a, .. } | SyntheticSpec::Coupled2D { a, .. } => {
                format!("A={a}")
            }
            SyntheticSpec::Quartic { a2, .. } => format!("A2={a2}"),
        }
    }

    /// True when every transform parameter is zero (`S = 0`, `H̃ = H`).
    pub fn is_identity(&self) -> bool {
        match *self {
            SyntheticSpec::Linear { a, .. } | SyntheticSpec::Coupled2D { a, .. } => a == 0.0,
            SyntheticSpec::Quartic { beta, a2 } => a2 == 0.0 && quartic_a3(beta) == 0.0,
        }
    }
}

/// `A₃ = √(2β)/3`, the coefficient that cancels `βξ⁴` in `G`.
pub fn quartic_a3(beta: f64) -> f64 {
    (2.0 * beta).sqrt() / 3.0
}

/// `A₂` used for the quartic runs: `−0.35` up to `β = 0.5`, `−0.375` above.
/// At `β = 0` there is no `λξ³` term to balance, so the transform is the
/// identity; a bare `ξ²` transform leaves a non-normal band that the
/// iteration does not resolve.
pub fn default_quartic_a2(beta: f64) -> f64 {
    if beta == 0.0 {
        0.0
    } else if beta <= 0.5 {
        -0.35
    } else {
        -0.375
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::InvalidArgument(format!(
            "dimension must be at least 2, got {dim}"
        )))
    } else {
        Ok(())
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "beta must be finite, got {beta}"
        )))
    }
}

/// `H = h₀ + βξ`: diagonal `n + ½`, `ξ` band scaled by `β`.
pub fn build_linear_true(beta: f64, dim: usize) -> Result<DenseMatrix> {
    build_linear_synthetic(beta, 0.0, dim)
}

/// `H̃` for `S = Aξ`: diagonal `n + ½ − A²/2`, band `[β + (m − n)A]⟨n|ξ|m⟩`.
/// `A = β` zeroes the lower band, `A = −β` the upper one.
pub fn build_linear_synthetic(beta: f64, a: f64, dim: usize) -> Result<DenseMatrix> {
    check_dim(dim)?;
    check_beta(beta)?;
    let mut h = DenseMatrix::zeros(dim);
    for n in 0..dim {
        h[(n, n)] = n as f64 + 0.5 - 0.5 * a * a;
        if n + 1 < dim {
            let x = xi_element(n, n + 1);
            h[(n, n + 1)] = (beta + a) * x;
            h[(n + 1, n)] = (beta - a) * x;
        }
    }
    Ok(h)
}

/// `H = h₀ + βξ⁴`.
pub fn build_quartic_true(beta: f64, dim: usize) -> Result<DenseMatrix> {
    check_dim(dim)?;
    check_beta(beta)?;
    Ok(DenseMatrix::from_fn(dim, |n, m| {
        let base = if n == m { n as f64 + 0.5 } else { 0.0 };
        base + beta * xi4_element(n, m)
    }))
}

/// `H̃_nm = (n+½)δ_nm − (2A₂ + n − m) A₂ ⟨n|ξ²|m⟩ − (6A₂ + n − m) A₃ ⟨n|λξ³|m⟩`.
///
/// `lambda_xi3` must be a `λξ³` table covering `dim` states. `β = 0` is
/// accepted and gives `A₃ = 0`.
pub fn build_quartic_synthetic(
    beta: f64,
    a2: f64,
    dim: usize,
    lambda_xi3: &ElementTable,
) -> Result<DenseMatrix> {
    check_dim(dim)?;
    check_beta(beta)?;
    if beta < 0.0 {
        return Err(Error::BetaOutOfRange {
            beta,
            range: "beta >= 0 for the quartic transform",
        });
    }
    if lambda_xi3.tag() != OperatorTag::LambdaXi3 {
        return Err(Error::InvalidArgument(format!(
            "expected a lxi3 table, got {}",
            lambda_xi3.tag()
        )));
    }
    lambda_xi3.require(dim)?;
    let a3 = quartic_a3(beta);
    Ok(DenseMatrix::from_fn(dim, |n, m| {
        let shift = n as f64 - m as f64;
        let diag = if n == m { n as f64 + 0.5 } else { 0.0 };
        diag - (2.0 * a2 + shift) * a2 * xi2_element(n, m)
            - (6.0 * a2 + shift) * a3 * lambda_xi3.get(n, m)
    }))
}

/// `A₂` that zeroes `Σ_{m≠n} (6A₂ + n − m)(6A₂ − n + m)⟨n|λξ³|m⟩²`, taking
/// the negative root:
///
/// ```text
/// A₂² = Σ_{m≠n} (m−n)² ⟨n|λξ³|m⟩² / (36 Σ_{m≠n} ⟨n|λξ³|m⟩²)
/// ```
///
/// The sums run over every `m` in the table, which must extend at least 50
/// states past `n`.
pub fn a2_from_quantum_number(n: usize, lambda_xi3: &ElementTable) -> Result<f64> {
    if lambda_xi3.tag() != OperatorTag::LambdaXi3 {
        return Err(Error::InvalidArgument(format!(
            "expected a lxi3 table, got {}",
            lambda_xi3.tag()
        )));
    }
    lambda_xi3.require(n + crate::oscillator::K_EXTRAP + 1)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for m in 0..lambda_xi3.size() {
        if m == n {
            continue;
        }
        let v = lambda_xi3.get(n, m);
        let d = m as f64 - n as f64;
        num += d * d * v * v;
        den += v * v;
    }
    Ok(-(num / (36.0 * den)).sqrt())
}

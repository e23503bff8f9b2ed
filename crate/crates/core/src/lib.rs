//! Perturbation-theory eigensolvers for finite Hamiltonian matrices.
//!
//! Two per-state solvers work on any real square matrix, Hermitian or not:
//! [`rspt::rspt_solve`] (Rayleigh–Schrödinger series with `E⁰_k = H_kk`) and
//! [`iterative::iterate_solve`] (a quadratic fixed-point iteration that
//! tolerates degenerate diagonals). [`hamiltonian`] builds true and
//! similarity-transformed ("synthetic") oscillator Hamiltonians, and
//! [`experiments`] runs the benchmark problems against exact references.

pub mod error;
pub mod experiments;
pub mod hamiltonian;
pub mod iterative;
pub mod jacobi;
pub mod matrix;
pub mod oscillator;
pub mod rspt;
pub mod solution;
pub mod text;

pub use error::{Error, Result};
pub use iterative::{iterate_solve, iterate_solve_all, IterConfig};
pub use jacobi::{jacobi_diagonalize, EigenSolution};
pub use matrix::{residual_norm, symmetry_defect, DenseMatrix};
pub use oscillator::{ElementTable, OperatorTag, QuadratureScheme};
pub use rspt::{rspt_solve, rspt_solve_all, RsptConfig};
pub use solution::{PerturbationSolution, Status};

//! Two coupled oscillators, `H = h₀(ξ₁) + h₀(ξ₂) + β ξ₁ ξ₂`.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::oscillator::{xi2_element, xi_element};

/// Which product states enter the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BasisCut {
    /// `n₁ + n₂ ≤ n_max`.
    #[default]
    Triangular,
    /// `n₁ ≤ n_max` and `n₂ ≤ n_max`.
    Square,
}

/// Product basis `|n₁, n₂⟩` ordered by total quantum number `n₁ + n₂`, then
/// by `n₁`, so the unperturbed energies `n₁ + n₂ + 1` never decrease.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMap2D {
    n_max: usize,
    cut: BasisCut,
    states: Vec<(usize, usize)>,
    lookup: Vec<Option<usize>>,
}

impl BasisMap2D {
    pub fn new(n_max: usize, cut: BasisCut) -> Self {
        let side = n_max + 1;
        let max_total = match cut {
            BasisCut::Triangular => n_max,
            BasisCut::Square => 2 * n_max,
        };
        let mut states = Vec::new();
        let mut lookup = vec![None; side * side];
        for total in 0..=max_total {
            for n1 in total.saturating_sub(n_max)..=total.min(n_max) {
                let n2 = total - n1;
                lookup[n1 * side + n2] = Some(states.len());
                states.push((n1, n2));
            }
        }
        Self {
            n_max,
            cut,
            states,
            lookup,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn cut(&self) -> BasisCut {
        self.cut
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, index: usize) -> (usize, usize) {
        self.states[index]
    }

    pub fn states(&self) -> &[(usize, usize)] {
        &self.states
    }

    /// Matrix index of `|n₁, n₂⟩`, if it is in the basis.
    pub fn index(&self, n1: usize, n2: usize) -> Option<usize> {
        if n1 > self.n_max || n2 > self.n_max {
            return None;
        }
        self.lookup[n1 * (self.n_max + 1) + n2]
    }

    /// Unperturbed energy `n₁ + n₂ + 1` of each basis state.
    pub fn unperturbed_energies(&self) -> Vec<f64> {
        self.states
            .iter()
            .map(|&(a, b)| (a + b + 1) as f64)
            .collect()
    }

    /// Calls `f(j, m₁, m₂)` for each basis state reachable from `index` by
    /// shifting `n₁` by `d₁ ∈ shifts` and `n₂` by `d₂ ∈ shifts`.
    fn for_neighbours(
        &self,
        index: usize,
        shifts: &[(isize, isize)],
        mut f: impl FnMut(usize, usize, usize),
    ) {
        let (n1, n2) = self.states[index];
        for &(d1, d2) in shifts {
            let m1 = n1 as isize + d1;
            let m2 = n2 as isize + d2;
            if m1 < 0 || m2 < 0 {
                continue;
            }
            let (m1, m2) = (m1 as usize, m2 as usize);
            if let Some(j) = self.index(m1, m2) {
                f(j, m1, m2);
            }
        }
    }
}

const PRODUCT_SHIFTS: [(isize, isize); 4] = [(-1, -1), (-1, 1), (1, -1), (1, 1)];
const SQUARE_SHIFTS: [(isize, isize); 5] = [(0, 0), (-2, 0), (2, 0), (0, -2), (0, 2)];

fn check_args(beta: f64, n_max: usize) -> Result<()> {
    if !beta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "beta must be finite, got {beta}"
        )));
    }
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    Ok(())
}

/// True Hamiltonian in the chosen basis.
pub fn build_2d_true(beta: f64, n_max: usize, cut: BasisCut) -> Result<(DenseMatrix, BasisMap2D)> {
    build_2d_synthetic(beta, 0.0, n_max, cut)
}

/// `H̃` for `S = A ξ₁ ξ₂`:
///
/// ```text
/// H̃ = (n₁+n₂+1)δ + [β + (m₁+m₂−n₁−n₂)A] ξ(n₁,m₁) ξ(n₂,m₂)
///     − ½A² [ξ²(n₁,m₁) δ(n₂,m₂) + δ(n₁,m₁) ξ²(n₂,m₂)]
/// ```
pub fn build_2d_synthetic(
    beta: f64,
    a: f64,
    n_max: usize,
    cut: BasisCut,
) -> Result<(DenseMatrix, BasisMap2D)> {
    check_args(beta, n_max)?;
    let basis = BasisMap2D::new(n_max, cut);
    let dim = basis.len();
    let mut h = DenseMatrix::zeros(dim);
    for i in 0..dim {
        let (n1, n2) = basis.state(i);
        h[(i, i)] += (n1 + n2 + 1) as f64;
        basis.for_neighbours(i, &PRODUCT_SHIFTS, |j, m1, m2| {
            let shift = (m1 + m2) as f64 - (n1 + n2) as f64;
            h[(i, j)] += (beta + shift * a) * xi_element(n1, m1) * xi_element(n2, m2);
        });
        if a != 0.0 {
            basis.for_neighbours(i, &SQUARE_SHIFTS, |j, m1, m2| {
                let mut g = 0.0;
                if n2 == m2 {
                    g += xi2_element(n1, m1);
                }
                if n1 == m1 {
                    g += xi2_element(n2, m2);
                }
                h[(i, j)] -= 0.5 * a * a * g;
            });
        }
    }
    Ok((h, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_ordering() {
        let b = BasisMap2D::new(2, BasisCut::Triangular);
        assert_eq!(
            b.states(),
            &[(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
        );
        assert_eq!(b.index(1, 1), Some(4));
        assert_eq!(b.index(2, 1), None);
        assert_eq!(b.index(3, 0), None);
        let s = BasisMap2D::new(1, BasisCut::Square);
        assert_eq!(s.states(), &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(BasisMap2D::new(39, BasisCut::Triangular).len(), 820);
        assert_eq!(BasisMap2D::new(5, BasisCut::Square).len(), 36);
        for cut in [BasisCut::Triangular, BasisCut::Square] {
            let b = BasisMap2D::new(7, cut);
            for (i, &(n1, n2)) in b.states().iter().enumerate() {
                assert_eq!(b.index(n1, n2), Some(i));
            }
        }
    }

    #[test]
    fn square_n_max_one() {
        let (h, _) = build_2d_true(0.2, 1, BasisCut::Square).unwrap();
        assert_eq!(h.diagonal(), vec![1.0, 2.0, 2.0, 3.0]);
        // ⟨0,0|ξ₁ξ₂|1,1⟩ = ½ and ⟨0,1|ξ₁ξ₂|1,0⟩ = ½
        assert!((h[(0, 3)] - 0.1).abs() < 1e-15);
        assert!((h[(1, 2)] - 0.1).abs() < 1e-15);
        assert_eq!(h[(0, 1)], 0.0);
        assert_eq!(crate::matrix::symmetry_defect(&h), 0.0);
    }

    #[test]
    fn uncoupled_is_diagonal() {
        let (h, b) = build_2d_true(0.0, 4, BasisCut::Triangular).unwrap();
        assert_eq!(h, DenseMatrix::from_diagonal(&b.unperturbed_energies()));
    }

    #[test]
    fn synthetic_reduces_to_true() {
        let (a, _) = build_2d_synthetic(0.6, 0.0, 5, BasisCut::Triangular).unwrap();
        let (b, _) = build_2d_true(0.6, 5, BasisCut::Triangular).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn synthetic_g_term() {
        let a = 0.4;
        let (h, b) = build_2d_synthetic(0.0, a, 3, BasisCut::Triangular).unwrap();
        // diagonal: 1 − ½A² (½ + ½) for the ground state
        assert!((h[(0, 0)] - (1.0 - 0.5 * a * a)).abs() < 1e-15);
        let i = b.index(0, 0).unwrap();
        let j = b.index(2, 0).unwrap();
        assert!((h[(i, j)] + 0.5 * a * a * xi2_element(0, 2)).abs() < 1e-15);
        assert_eq!(h[(i, j)], h[(j, i)]);
    }

    #[test]
    fn rejects_bad_args() {
        assert!(build_2d_true(f64::NAN, 3, BasisCut::Triangular).is_err());
        assert!(build_2d_true(0.2, 0, BasisCut::Triangular).is_err());
    }
}

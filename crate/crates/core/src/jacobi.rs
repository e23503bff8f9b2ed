//! Cyclic Jacobi diagonalization for real symmetric matrices.
//!
//! Kept deliberately independent of the perturbation solvers so it can serve
//! as the reference they are checked against.

use crate::error::{Error, Result};
use crate::matrix::{symmetry_defect, DenseMatrix};

pub const MAX_SWEEPS: usize = 50;
const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order; column `k` of `eigenvectors` belongs to
/// `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DenseMatrix,
}

impl EigenSolution {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a symmetric matrix with cyclic Jacobi sweeps.
///
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// `tol * max(1, ‖H‖_F)`. Rotations whose angle would be lost in rounding are
/// replaced by zeroing the element, so the off-diagonal norm reaches zero for
/// well-separated spectra.
pub fn jacobi_diagonalize(h: &DenseMatrix, tol: f64) -> Result<EigenSolution> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = h.dim();
    let defect = symmetry_defect(h);
    if defect > SYMMETRY_TOL {
        let (row, col) = worst_asymmetry(h);
        return Err(Error::NonSymmetric { row, col, defect });
    }

    let mut a = h.clone();
    let mut v = DenseMatrix::identity(n);
    let scale = h
        .as_slice()
        .iter()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    let threshold = tol * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off < threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let g = 100.0 * apq.abs();
                if sweeps > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s, t);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let eigenvectors = DenseMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(EigenSolution {
        eigenvalues,
        eigenvectors,
    })
}

/// Applies the rotation in the (p, q) plane that annihilates `a[p,q]`.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64, t: f64) {
    let n = a.dim();
    let apq = a[(p, q)];
    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_p = c * arp - s * arq;
        let new_q = s * arp + c * arq;
        a[(r, p)] = new_p;
        a[(p, r)] = new_p;
        a[(r, q)] = new_q;
        a[(q, r)] = new_q;
    }
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * vrq;
        v[(r, q)] = s * vrp + c * vrq;
    }
}

fn worst_asymmetry(h: &DenseMatrix) -> (usize, usize) {
    let n = h.dim();
    let mut best = (0, 0, -1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (h[(i, j)] - h[(j, i)]).abs();
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::residual_norm;

    #[test]
    fn identity_and_diagonal() {
        let e = jacobi_diagonalize(&DenseMatrix::identity(3), 1e-12).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);
        let e = jacobi_diagonalize(&DenseMatrix::from_diagonal(&[2.0, -1.0, 5.0]), 1e-12).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 2.0, 5.0]);
        // eigenvector columns follow the sort
        assert_eq!(e.eigenvector(0), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let h = DenseMatrix::from_rows(&[[1.0, 0.5], [0.5, 2.0]]).unwrap();
        let e = jacobi_diagonalize(&h, 1e-14).unwrap();
        let r = 2.0_f64.sqrt();
        assert!((e.eigenvalues[0] - (3.0 - r) / 2.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - (3.0 + r) / 2.0).abs() < 1e-14);
        for k in 0..2 {
            let v = e.eigenvector(k);
            assert!(residual_norm(&h, e.eigenvalues[k], &v).unwrap() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_symmetric() {
        let h = DenseMatrix::from_rows(&[[1.0, 0.5], [0.4, 2.0]]).unwrap();
        assert!(matches!(
            jacobi_diagonalize(&h, 1e-12),
            Err(Error::NonSymmetric { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(jacobi_diagonalize(&DenseMatrix::identity(2), 0.0).is_err());
        assert!(jacobi_diagonalize(&DenseMatrix::identity(2), f64::NAN).is_err());
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let h = DenseMatrix::from_fn(6, |i, j| {
            if i == j {
                i as f64
            } else {
                1.0 / (1.0 + (i + j) as f64)
            }
        });
        let e = jacobi_diagonalize(&h, 1e-13).unwrap();
        let vtv = e.eigenvectors.transpose().matmul(&e.eigenvectors).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((vtv[(i, j)] - target).abs() < 1e-12);
            }
        }
    }
}

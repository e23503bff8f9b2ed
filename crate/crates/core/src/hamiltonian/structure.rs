//! Checks that a synthetic matrix decomposes as `H + F − G`.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::oscillator::{
    cached_table, xi2_element, xi4_element, xi_element, ElementTable, OperatorTag,
};

use super::{
    build_2d_synthetic, build_2d_true, build_linear_synthetic, build_linear_true,
    build_quartic_synthetic, build_quartic_true, quartic_a3, BasisCut, BasisMap2D, SyntheticSpec,
};

/// Relative tolerance for `H̃ = H + F − G`.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Absolute tolerance for the symmetry of `G` and antisymmetry of `F`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Rows and columns this close to the truncation edge are left out of the
/// reconstruction check.
const EDGE_MARGIN: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct FgReport {
    pub dim: usize,
    /// Largest `|F_nm + F_mn|`.
    pub f_antisymmetry: f64,
    /// Largest `|G_nm − G_mn|`.
    pub g_symmetry: f64,
    /// Smallest diagonal element of `G`.
    pub g_min_diagonal: f64,
    /// Largest relative mismatch between `H̃` and `H + F − G` on the central block.
    pub reconstruction: f64,
    /// Size of the central block that was compared.
    pub checked_block: usize,
}

struct Parts {
    true_h: DenseMatrix,
    synthetic: DenseMatrix,
    s: DenseMatrix,
    g: DenseMatrix,
    energies: Vec<f64>,
    central: Vec<usize>,
}

/// Builds `H`, `S`, `G` and `H̃` for `spec` and checks that `F_nm = (E⁰_m − E⁰_n) S_nm`
/// is antisymmetric, `G` is symmetric with a positive diagonal, and
/// `H̃ = H + F − G` away from the truncation edge.
///
/// `size` is the matrix dimension for the 1-D problems and `n_max` of a
/// triangular basis for the coupled problem. The quartic case fetches a
/// cached `λξ³` table when none is given.
pub fn verify_fg_structure(
    spec: &SyntheticSpec,
    size: usize,
    lambda_xi3: Option<&ElementTable>,
) -> Result<FgReport> {
    let parts = match *spec {
        SyntheticSpec::Linear { beta, a } => linear_parts(beta, a, size)?,
        SyntheticSpec::Quartic { beta, a2 } => {
            let owned;
            let table = match lambda_xi3 {
                Some(t) => t,
                None => {
                    owned = cached_table(OperatorTag::LambdaXi3, size.saturating_sub(1))?;
                    &owned
                }
            };
            quartic_parts(beta, a2, size, table)?
        }
        SyntheticSpec::Coupled2D { beta, a } => coupled_parts(beta, a, size)?,
    };
    let dim = parts.synthetic.dim();

    let mut f_antisymmetry = 0.0f64;
    let mut g_symmetry = 0.0f64;
    let mut g_min_diagonal = f64::INFINITY;
    for n in 0..dim {
        g_min_diagonal = g_min_diagonal.min(parts.g[(n, n)]);
        for m in 0..dim {
            let f_nm = (parts.energies[m] - parts.energies[n]) * parts.s[(n, m)];
            let f_mn = (parts.energies[n] - parts.energies[m]) * parts.s[(m, n)];
            f_antisymmetry = f_antisymmetry.max((f_nm + f_mn).abs());
            g_symmetry = g_symmetry.max((parts.g[(n, m)] - parts.g[(m, n)]).abs());
        }
    }

    let mut reconstruction = 0.0f64;
    for &n in &parts.central {
        for &m in &parts.central {
            let f_nm = (parts.energies[m] - parts.energies[n]) * parts.s[(n, m)];
            let expected = parts.true_h[(n, m)] + f_nm - parts.g[(n, m)];
            let got = parts.synthetic[(n, m)];
            let err = (got - expected).abs() / expected.abs().max(1.0);
            if err > STRUCTURE_TOL {
                return Err(Error::StructureViolation {
                    matrix: "H + F - G",
                    row: n,
                    col: m,
                    detail: format!("synthetic {got}, reconstructed {expected}"),
                });
            }
            reconstruction = reconstruction.max(err);
        }
    }

    if f_antisymmetry > SYMMETRY_TOL {
        let (row, col) = worst_pair(dim, |n, m| {
            ((parts.energies[m] - parts.energies[n]) * (parts.s[(n, m)] - parts.s[(m, n)])).abs()
        });
        return Err(Error::StructureViolation {
            matrix: "F",
            row,
            col,
            detail: format!("antisymmetry defect {f_antisymmetry}"),
        });
    }
    if g_symmetry > SYMMETRY_TOL {
        let (row, col) = worst_pair(dim, |n, m| (parts.g[(n, m)] - parts.g[(m, n)]).abs());
        return Err(Error::StructureViolation {
            matrix: "G",
            row,
            col,
            detail: format!("symmetry defect {g_symmetry}"),
        });
    }
    let positive = if spec.is_identity() {
        g_min_diagonal >= 0.0
    } else {
        g_min_diagonal > 0.0
    };
    if !positive {
        let row = (0..dim)
            .min_by(|&i, &j| parts.g[(i, i)].total_cmp(&parts.g[(j, j)]))
            .unwrap_or(0);
        return Err(Error::StructureViolation {
            matrix: "G",
            row,
            col: row,
            detail: format!("non-positive diagonal {g_min_diagonal}"),
        });
    }

    Ok(FgReport {
        dim,
        f_antisymmetry,
        g_symmetry,
        g_min_diagonal,
        reconstruction,
        checked_block: parts.central.len(),
    })
}

fn worst_pair(dim: usize, f: impl Fn(usize, usize) -> f64) -> (usize, usize) {
    let mut best = (0, 0, -1.0);
    for n in 0..dim {
        for m in 0..dim {
            let v = f(n, m);
            if v > best.2 {
                best = (n, m, v);
            }
        }
    }
    (best.0, best.1)
}

fn oscillator_energies(dim: usize) -> Vec<f64> {
    (0..dim).map(|n| n as f64 + 0.5).collect()
}

fn central_1d(dim: usize) -> Vec<usize> {
    (0..dim.saturating_sub(EDGE_MARGIN)).collect()
}

fn linear_parts(beta: f64, a: f64, dim: usize) -> Result<Parts> {
    Ok(Parts {
        true_h: build_linear_true(beta, dim)?,
        synthetic: build_linear_synthetic(beta, a, dim)?,
        s: DenseMatrix::from_fn(dim, |n, m| a * xi_element(n, m)),
        g: DenseMatrix::from_fn(dim, |n, m| if n == m { 0.5 * a * a } else { 0.0 }),
        energies: oscillator_energies(dim),
        central: central_1d(dim),
    })
}

fn quartic_parts(beta: f64, a2: f64, dim: usize, table: &ElementTable) -> Result<Parts> {
    let synthetic = build_quartic_synthetic(beta, a2, dim, table)?;
    let a3 = quartic_a3(beta);
    Ok(Parts {
        true_h: build_quartic_true(beta, dim)?,
        synthetic,
        s: DenseMatrix::from_fn(dim, |n, m| a2 * xi2_element(n, m) + a3 * table.get(n, m)),
        g: DenseMatrix::from_fn(dim, |n, m| {
            beta * xi4_element(n, m)
                + 2.0 * a2 * a2 * xi2_element(n, m)
                + 6.0 * a2 * a3 * table.get(n, m)
        }),
        energies: oscillator_energies(dim),
        central: central_1d(dim),
    })
}

fn coupled_parts(beta: f64, a: f64, n_max: usize) -> Result<Parts> {
    let (true_h, basis) = build_2d_true(beta, n_max, BasisCut::Triangular)?;
    let (synthetic, _) = build_2d_synthetic(beta, a, n_max, BasisCut::Triangular)?;
    let s = product_operator(&basis, |(n1, n2), (m1, m2)| {
        a * xi_element(n1, m1) * xi_element(n2, m2)
    });
    let g = product_operator(&basis, |(n1, n2), (m1, m2)| {
        let mut v = 0.0;
        if n2 == m2 {
            v += xi2_element(n1, m1);
        }
        if n1 == m1 {
            v += xi2_element(n2, m2);
        }
        0.5 * a * a * v
    });
    let central = (0..basis.len())
        .filter(|&i| {
            let (n1, n2) = basis.state(i);
            n1 + n2 + EDGE_MARGIN <= n_max
        })
        .collect();
    Ok(Parts {
        true_h,
        synthetic,
        s,
        g,
        energies: basis.unperturbed_energies(),
        central,
    })
}

fn product_operator(
    basis: &BasisMap2D,
    f: impl Fn((usize, usize), (usize, usize)) -> f64,
) -> DenseMatrix {
    DenseMatrix::from_fn(basis.len(), |i, j| f(basis.state(i), basis.state(j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_structure() {
        let r =
            verify_fg_structure(&SyntheticSpec::Linear { beta: 0.5, a: 0.5 }, 20, None).unwrap();
        assert_eq!(r.dim, 20);
        assert_eq!(r.checked_block, 16);
        assert!(r.f_antisymmetry < 1e-14);
        assert!((r.g_min_diagonal - 0.125).abs() < 1e-15);
        assert!(r.reconstruction < 1e-14);
    }

    #[test]
    fn quartic_structure() {
        for &(beta, a2) in &[(0.1, -0.35), (1.0, -0.375), (1.6, -0.375)] {
            let r = verify_fg_structure(&SyntheticSpec::Quartic { beta, a2 }, 60, None).unwrap();
            assert!(r.g_min_diagonal > 0.0);
            assert!(r.g_symmetry <= SYMMETRY_TOL);
            assert!(r.reconstruction <= STRUCTURE_TOL);
        }
    }

    #[test]
    fn coupled_structure() {
        let r =
            verify_fg_structure(&SyntheticSpec::Coupled2D { beta: 0.4, a: 0.2 }, 10, None).unwrap();
        assert_eq!(r.dim, 66);
        assert!(r.g_min_diagonal > 0.0);
        assert!(r.reconstruction <= STRUCTURE_TOL);
    }

    #[test]
    fn identity_transform_has_zero_g() {
        let r =
            verify_fg_structure(&SyntheticSpec::Linear { beta: 0.5, a: 0.0 }, 10, None).unwrap();
        assert_eq!(r.g_min_diagonal, 0.0);
    }
}

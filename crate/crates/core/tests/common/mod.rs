//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use perturba::oscillator::{
    half_line_moment, lambda_element, xi2_element, xi3_element, xi4_element, xi_element, K_EXTRAP,
    N_EXTRAP_BASE,
};
use perturba::{DenseMatrix, OperatorTag, QuadratureScheme};
use proptest::prelude::*;

/// Integer coefficients of the physicists' Hermite polynomial `H_n`,
/// lowest power first.
pub fn hermite_coefficients(n: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(1)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::from(0), BigInt::from(2)];
    for k in 1..n {
        // H_{k+1} = 2ξ H_k − 2k H_{k−1}
        let mut next = vec![BigInt::from(0); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * (2 * k as i64);
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * i)
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_string().parse().expect("bigint prints as an integer")
}

/// `⟨n|λξ^p|m⟩ = 2 N_n N_m ∫₀^∞ H_n H_m ξ^p e^{−ξ²} dξ` for odd `p`, evaluated
/// with exact integer arithmetic from `∫₀^∞ ξ^j e^{−ξ²} dξ = ½ ((j−1)/2)!`
/// (odd `j`). Only the final division is done in floating point.
pub fn exact_lambda_moment(n: usize, m: usize, p: usize) -> f64 {
    assert!(p % 2 == 1, "odd powers only");
    if (n + m) % 2 == 1 {
        return 0.0;
    }
    let hn = hermite_coefficients(n);
    let hm = hermite_coefficients(m);
    let mut sum = BigInt::from(0);
    for (i, a) in hn.iter().enumerate() {
        if a == &BigInt::from(0) {
            continue;
        }
        for (j, b) in hm.iter().enumerate() {
            let power = i + j + p;
            sum += a * b * factorial((power - 1) / 2);
        }
    }
    // N_n N_m = (π 2^{n+m} n! m!)^{-1/2}; the factor 2 cancels the ½ above
    let denom = (BigInt::from(1) << (n + m)) * factorial(n) * factorial(m);
    to_f64(&sum) / (std::f64::consts::PI * to_f64(&denom)).sqrt()
}

/// Number of eigenvalues of the symmetric matrix `h` below `sigma`, from the
/// signs of the pivots of `h − σI` (Sylvester's law of inertia).
pub fn count_below(h: &DenseMatrix, sigma: f64) -> usize {
    let n = h.dim();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| h[(i, j)] - if i == j { sigma } else { 0.0 })
                .collect()
        })
        .collect();
    let mut negatives = 0;
    for k in 0..n {
        let mut pivot = a[k][k];
        if pivot == 0.0 {
            pivot = -1e-300;
            a[k][k] = pivot;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest {
            let f = row[k] / pivot;
            for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *x -= f * p;
            }
        }
    }
    negatives
}

/// Eigenvalue `index` (ascending) of a symmetric matrix by bisection on the
/// inertia count.
pub fn bisect_eigenvalue(h: &DenseMatrix, index: usize) -> f64 {
    let n = h.dim();
    let radius = (0..n)
        .map(|i| (0..n).map(|j| h[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let (mut lo, mut hi) = (-radius - 1.0, radius + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_below(h, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 * (1.0 + lo.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalues of a 2×2 matrix with real spectrum, ascending.
pub fn two_by_two_eigenvalues(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b * c).sqrt();
    (mean - disc, mean + disc)
}

/// Symmetric, strictly diagonally dominant matrix from raw uniform draws in
/// `[0, 1)`: off-diagonals in `[−½, ½]`, diagonal increasing with disjoint
/// Gershgorin discs (each gap exceeds the two neighbouring row sums by a
/// margin).
pub fn dominant_matrix(dim: usize, off: &[f64], margins: &[f64]) -> DenseMatrix {
    let mut h = DenseMatrix::zeros(dim);
    let mut idx = 0;
    for i in 0..dim {
        for j in i + 1..dim {
            let v = off[idx] - 0.5;
            idx += 1;
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    let rows: Vec<f64> = (0..dim)
        .map(|i| (0..dim).filter(|&j| j != i).map(|j| h[(i, j)].abs()).sum())
        .collect();
    let mut d = rows[0] + margins[0];
    for i in 0..dim {
        if i > 0 {
            d += rows[i - 1] + rows[i] + margins[i];
        }
        h[(i, i)] = d;
    }
    h
}

/// Strategy for `dominant_matrix` with dimensions `2..=max_dim`.
pub fn dominant(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (2..=max_dim).prop_flat_map(|dim| {
        (
            proptest::collection::vec(0.0f64..1.0, dim * (dim - 1) / 2),
            proptest::collection::vec(0.05f64..2.0, dim),
        )
            .prop_map(move |(off, margins)| dominant_matrix(dim, &off, &margins))
    })
}

type Element = fn(usize, usize) -> f64;

/// Largest relative defect of the closure relations `Σ_k a_nk b_km = c_nm`
/// among the closed-form elements, for `n, m ≤ max_n`.
pub fn sum_rule_defect(max_n: usize) -> f64 {
    let triples: [(Element, Element, Element); 5] = [
        (xi_element, xi_element, xi2_element),
        (xi_element, xi2_element, xi3_element),
        (xi2_element, xi_element, xi3_element),
        (xi2_element, xi2_element, xi4_element),
        (xi_element, xi3_element, xi4_element),
    ];
    let mut worst = 0.0f64;
    for (a, b, c) in triples {
        for n in 0..=max_n {
            for m in 0..=max_n {
                // intermediate states reach at most max(n, m) + 3
                let sum: f64 = (0..=max_n + 4).map(|k| a(n, k) * b(k, m)).sum();
                let want = c(n, m);
                worst = worst.max((sum - want).abs() / want.abs().max(1.0));
            }
        }
    }
    worst
}

/// Largest error of quadrature `λξ^p` elements against the exact moments,
/// relative to `max(|exact|, 1)`, for `n, m ≤ max_n`.
pub fn quadrature_defect(tag: OperatorTag, max_n: usize) -> f64 {
    let scheme = QuadratureScheme::default();
    let p = tag.power() as usize;
    let mut worst = 0.0f64;
    for n in 0..=max_n {
        for m in 0..=max_n {
            let exact = exact_lambda_moment(n, m, p);
            let got = lambda_element(tag, n, m, &scheme).expect("in range");
            worst = worst.max((got - exact).abs() / exact.abs().max(1.0));
        }
    }
    worst
}

/// Extrapolation continuity: whether every anchor `(n_e, n_e + k)` returns
/// the quadrature value unchanged, and the largest relative gap between
/// extrapolated and directly integrated values one step past the anchors.
pub fn extrapolation_continuity() -> (bool, f64) {
    let s = QuadratureScheme::default();
    let mut anchored = true;
    let mut worst = 0.0f64;
    for tag in [OperatorTag::LambdaXi, OperatorTag::LambdaXi3] {
        let p = tag.power();
        let mut gap = |n: usize, m: usize| {
            let direct = half_line_moment(n, m, p, &s);
            let extrap = lambda_element(tag, n, m, &s).expect("in range");
            worst = worst.max((extrap / direct - 1.0).abs());
        };
        for n in [0usize, 10, 30] {
            gap(n, n + K_EXTRAP + 2);
        }
        for k in (0..=K_EXTRAP).step_by(10) {
            let ne = N_EXTRAP_BASE - k / 2;
            gap(ne + 1, ne + 1 + k);
            let anchor = half_line_moment(ne, ne + k, p, &s);
            anchored &= lambda_element(tag, ne, ne + k, &s).expect("in range") == anchor;
        }
    }
    (anchored, worst)
}

mod common;

use common::{bisect_eigenvalue, dominant, two_by_two_eigenvalues};
use perturba::hamiltonian::{
    build_2d_synthetic, build_2d_true, build_linear_synthetic, build_linear_true,
    build_quartic_synthetic, build_quartic_true, BasisCut,
};
use perturba::oscillator::{cached_table, xi2_element, xi3_element, xi4_element, xi_element};
use perturba::text::format_f64;
use perturba::{
    iterate_solve, jacobi_diagonalize, rspt_solve, DenseMatrix, IterConfig, OperatorTag,
    RsptConfig, Status,
};
use proptest::prelude::*;

fn symmetric_matrix(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (2..=max_dim).prop_flat_map(|dim| {
        proptest::collection::vec(-5.0f64..5.0, dim * dim).prop_map(move |v| {
            DenseMatrix::from_fn(dim, |i, j| {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                v[a * dim + b]
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_matches_inertia_bisection(h in symmetric_matrix(8)) {
        let eig = jacobi_diagonalize(&h, 1e-14).unwrap();
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            let oracle = bisect_eigenvalue(&h, i);
            prop_assert!((lambda - oracle).abs() < 1e-9 * (1.0 + oracle.abs()), "{i}: {lambda} vs {oracle}");
        }
    }

    #[test]
    fn jacobi_eigenpairs_are_orthonormal(h in symmetric_matrix(8)) {
        let eig = jacobi_diagonalize(&h, 1e-14).unwrap();
        let n = h.dim();
        for a in 0..n {
            let va = eig.eigenvector(a);
            prop_assert!(perturba::residual_norm(&h, eig.eigenvalues[a], &va).unwrap() < 1e-9);
            for b in 0..n {
                let vb = eig.eigenvector(b);
                let dot: f64 = va.iter().zip(&vb).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() < 1e-10);
            }
        }
        let trace: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((trace - h.trace()).abs() < 1e-10 * (1.0 + h.trace().abs()));
    }

    #[test]
    fn solvers_agree_with_jacobi(h in dominant(10)) {
        let eig = jacobi_diagonalize(&h, 1e-14).unwrap();
        let nearest = |e: f64| eig.eigenvalues.iter().map(|l| (l - e).abs()).fold(f64::INFINITY, f64::min);
        for k in 0..h.dim() {
            let it = iterate_solve(&h, k, &IterConfig::default()).unwrap();
            if it.is_converged() {
                prop_assert!(nearest(it.energy) < 1e-9, "iter state {k}: {}", it.energy);
            }
            if let Ok(r) = rspt_solve(&h, k, &RsptConfig::default()) {
                if r.is_converged() {
                    prop_assert!(nearest(r.energy) < 1e-9, "rspt state {k}: {}", r.energy);
                    if it.is_converged() {
                        prop_assert!((r.energy - it.energy).abs() < 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn iteration_solves_two_by_two(a in -3.0f64..3.0, d in -3.0f64..3.0, b in -2.0f64..2.0, c in -2.0f64..2.0) {
        let h = DenseMatrix::from_rows(&[[a, b], [c, d]]).unwrap();
        prop_assume!(0.25 * (a - d) * (a - d) + b * c > 1e-6);
        let (lo, hi) = two_by_two_eigenvalues(a, b, c, d);
        for k in 0..2 {
            let s = iterate_solve(&h, k, &IterConfig::default()).unwrap();
            prop_assert_eq!(s.status, Status::Converged);
            let want = if (h[(k, k)] < h[(1 - k, 1 - k)]) || (a == d && k == 0) { lo } else { hi };
            prop_assert!((s.energy - want).abs() < 1e-9, "k={}: {} vs {}", k, s.energy, want);
        }
    }

    #[test]
    fn closed_forms_are_symmetric_with_parity(n in 0usize..200, m in 0usize..200) {
        for f in [xi_element, xi2_element, xi3_element, xi4_element] {
            prop_assert_eq!(f(n, m), f(m, n));
        }
        if (n + m) % 2 == 0 {
            prop_assert_eq!(xi_element(n, m), 0.0);
            prop_assert_eq!(xi3_element(n, m), 0.0);
        } else {
            prop_assert_eq!(xi2_element(n, m), 0.0);
            prop_assert_eq!(xi4_element(n, m), 0.0);
        }
    }

    #[test]
    fn zero_transform_reproduces_true_hamiltonian(beta in 0.0f64..2.0, dim in 2usize..30) {
        prop_assert_eq!(build_linear_synthetic(beta, 0.0, dim).unwrap(), build_linear_true(beta, dim).unwrap());
        let nmax = dim / 4 + 1;
        prop_assert_eq!(
            build_2d_synthetic(beta, 0.0, nmax, BasisCut::Triangular).unwrap().0,
            build_2d_true(beta, nmax, BasisCut::Triangular).unwrap().0
        );
        // with A₂ = 0 and β = 0 the quartic transform is the identity
        let table = cached_table(OperatorTag::LambdaXi3, dim - 1).unwrap();
        prop_assert_eq!(
            build_quartic_synthetic(0.0, 0.0, dim, &table).unwrap(),
            build_quartic_true(0.0, dim).unwrap()
        );
    }

    #[test]
    fn matrix_text_round_trip(h in symmetric_matrix(6)) {
        prop_assert_eq!(DenseMatrix::from_text(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn float_format_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
    }
}

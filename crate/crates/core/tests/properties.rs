//! Property tests for the arithmetic kernels, the exponential, and the
//! scalar deviation map.

use matlog::expm::{expm, plan_exp};
use matlog::matrix::{
    add, commutator_residual, frobenius_norm, householder_similarity, inverse, multiply, scale,
    subtract, CostCategory, CostLedger, Matrix,
};
use matlog::scalar::{deviation_map, f_indicator, in_region_v};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #[test]
    fn multiply_associative(
        dim in 2usize..=16,
        seed in proptest::collection::vec(-1.0f64..1.0, 3 * 16 * 16),
    ) {
        let take = |offset: usize| {
            Matrix::from_row_major(
                dim,
                seed[offset * dim * dim..(offset + 1) * dim * dim].to_vec(),
            )
            .unwrap()
        };
        let (a, b, c) = (take(0), take(1), take(2));
        let mut ledger = CostLedger::new();
        let left = multiply(
            &multiply(&a, &b, &mut ledger, CostCategory::FixedPoint).unwrap(),
            &c,
            &mut ledger,
            CostCategory::FixedPoint,
        )
        .unwrap();
        let right = multiply(
            &a,
            &multiply(&b, &c, &mut ledger, CostCategory::FixedPoint).unwrap(),
            &mut ledger,
            CostCategory::FixedPoint,
        )
        .unwrap();
        let scale_ref = frobenius_norm(&left).max(1.0);
        let diff = frobenius_norm(&subtract(&left, &right).unwrap());
        prop_assert!(diff <= 1e-12 * scale_ref);
        prop_assert_eq!(ledger.total(), 4);
    }

    #[test]
    fn inverse_residual_small(
        dim in 2usize..=32,
        seed in proptest::collection::vec(-1.0f64..1.0, 32 * 32),
    ) {
        // entries in [-1, 1] plus a 2*dim identity shift keeps conditioning mild
        let mut a = Matrix::from_row_major(dim, seed[..dim * dim].to_vec()).unwrap();
        for i in 0..dim {
            a.set(i, i, a.get(i, i) + 2.0 * dim as f64);
        }
        let inv = inverse(&a).unwrap();
        let mut ledger = CostLedger::new();
        let product = multiply(&a, &inv, &mut ledger, CostCategory::FixedPoint).unwrap();
        let residual = frobenius_norm(&subtract(&product, &Matrix::identity(dim)).unwrap());
        prop_assert!(residual <= 1e-10, "residual = {residual}");
    }

    #[test]
    fn householder_preserves_norm(
        entries in proptest::collection::vec(-5.0f64..5.0, 2..=12),
        raw_v in proptest::collection::vec(-1.0f64..1.0, 12),
    ) {
        let dim = entries.len();
        let norm: f64 = raw_v[..dim].iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let v: Vec<f64> = raw_v[..dim].iter().map(|x| x / norm).collect();
        let d = Matrix::diagonal(&entries);
        let r = householder_similarity(&d, &v).unwrap();
        let dn = frobenius_norm(&d);
        prop_assume!(dn > 1e-6);
        prop_assert!((frobenius_norm(&r) - dn).abs() <= 1e-12 * dn);
    }

    #[test]
    fn expm_inverse_consistency(
        dim in 2usize..=16,
        seed in proptest::collection::vec(-1.0f64..1.0, 16 * 16),
    ) {
        let raw = Matrix::from_row_major(dim, seed[..dim * dim].to_vec()).unwrap();
        let norm = frobenius_norm(&raw);
        prop_assume!(norm > 1e-6);
        // rescale so |B|_F <= 5
        let b = scale(&raw, 4.0 / norm);
        let eps = 1e-12;
        let mut ledger = CostLedger::new();
        let fwd = expm(&b, eps, &mut ledger).unwrap();
        let bwd = expm(&scale(&b, -1.0), eps, &mut ledger).unwrap();
        let product = multiply(&fwd, &bwd, &mut ledger, CostCategory::Exp).unwrap();
        let residual = frobenius_norm(&subtract(&product, &Matrix::identity(dim)).unwrap());
        prop_assert!(residual <= 50.0 * eps, "residual = {residual}");
    }

    #[test]
    fn expm_commuting_additivity(
        dim in 2usize..=8,
        seed in proptest::collection::vec(-0.5f64..0.5, 8 * 8),
        c0 in -0.5f64..0.5, c1 in -0.5f64..0.5, c2 in -0.5f64..0.5,
    ) {
        // B1, B2 polynomials in the same symmetric S commute
        let mut s = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                let x = seed[i * dim + j];
                s.set(i, j, x);
                s.set(j, i, x);
            }
        }
        let mut ledger = CostLedger::new();
        let s2 = multiply(&s, &s, &mut ledger, CostCategory::FixedPoint).unwrap();
        let b1 = add(&scale(&s, c0), &scale(&s2, c1)).unwrap();
        let b2 = scale(&s, c2);
        let eps = 1e-12;
        let sum = expm(&add(&b1, &b2).unwrap(), eps, &mut ledger).unwrap();
        let split = multiply(
            &expm(&b1, eps, &mut ledger).unwrap(),
            &expm(&b2, eps, &mut ledger).unwrap(),
            &mut ledger,
            CostCategory::Exp,
        )
        .unwrap();
        let diff = frobenius_norm(&subtract(&sum, &split).unwrap());
        prop_assert!(diff <= 100.0 * eps, "diff = {diff}");
    }

    #[test]
    fn expm_cost_is_plan_cost(
        dim in 2usize..=8,
        seed in proptest::collection::vec(-2.0f64..2.0, 8 * 8),
        eps_exp in 4u32..14,
    ) {
        let b = Matrix::from_row_major(dim, seed[..dim * dim].to_vec()).unwrap();
        let eps = 10f64.powi(-(eps_exp as i32));
        let plan = plan_exp(frobenius_norm(&b), eps);
        let mut ledger = CostLedger::new();
        expm(&b, eps, &mut ledger).unwrap();
        prop_assert_eq!(ledger.exp_muls, plan.cost());
    }

    #[test]
    fn deviation_positive_on_reals(lambda in -50.0f64..50.0) {
        let d = deviation_map(Complex64::new(lambda, 0.0));
        prop_assert!(d.re >= 0.0);
        prop_assert!(d.im.abs() == 0.0);
    }

    #[test]
    fn deviation_contracts_right_of_boundary(lambda in -1.256f64..50.0) {
        prop_assume!(lambda != 0.0);
        let d = deviation_map(Complex64::new(lambda, 0.0));
        prop_assert!(d.norm() <= lambda.abs());
    }

    #[test]
    fn deviation_quadratic_rate(lambda in 1e-6f64..0.5) {
        let d = deviation_map(Complex64::new(lambda, 0.0)).re;
        prop_assert!(d >= 0.0);
        prop_assert!(d <= lambda * lambda / 2.0);
    }

    #[test]
    fn region_matches_indicator(re in -10.0f64..10.0, im in -10.0f64..10.0) {
        let lambda = Complex64::new(re, im);
        prop_assume!(lambda != Complex64::new(0.0, 0.0));
        prop_assert_eq!(in_region_v(lambda).unwrap(), f_indicator(lambda) <= 0.0);
    }

    #[test]
    fn commutator_zero_for_polynomials(
        dim in 2usize..=6,
        seed in proptest::collection::vec(-1.0f64..1.0, 6 * 6),
        c in -2.0f64..2.0,
    ) {
        let a = Matrix::from_row_major(dim, seed[..dim * dim].to_vec()).unwrap();
        let mut ledger = CostLedger::new();
        let a2 = multiply(&a, &a, &mut ledger, CostCategory::FixedPoint).unwrap();
        let p = add(&scale(&a2, c), &a).unwrap();
        let residual = commutator_residual(&a, &p).unwrap();
        let scale_ref = frobenius_norm(&a) * frobenius_norm(&p);
        prop_assert!(residual <= 1e-12 * scale_ref.max(1.0));
    }
}

#[test]
fn negative_real_boundary_crossing() {
    // the f = 0 crossing on the negative real axis sits in [-1.257, -1.256]
    let left = f_indicator(Complex64::new(-1.257, 0.0));
    let right = f_indicator(Complex64::new(-1.256, 0.0));
    assert!(left > 0.0, "f(-1.257) = {left}");
    assert!(right < 0.0, "f(-1.256) = {right}");
}

//! Property tests for the exact identities the construction leans on.
//!
//! Everything here is either an exact rational identity (asserted with no
//! tolerance) or a float identity whose error budget is orders of magnitude
//! below the working precision, so none of these are statistically tuned.

use hermite_sobolev::bessel::bessel_j;
use hermite_sobolev::hermite::{
    hermite_at_zero_rational, hermite_monic, hermite_norm_sq_rational, hermite_rationals,
};
use hermite_sobolev::kernels::kernel_sum;
use hermite_sobolev::qlambda::{q_poly, TwoByTwoCase};
use hermite_sobolev::real::Real;
use hermite_sobolev::symmetrize::{mass_map, pochhammer, symmetrization_residual};
use hermite_sobolev::zeros::{hermite_zeros, interlace_check, real_zeros};
use proptest::prelude::*;
use rug::Rational;

/// Exact Horner evaluation of a rational-coefficient polynomial.
fn eval_rat(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1u32..=8).prop_map(|(n, d)| Rational::from((n, d)))
}

fn small_mass() -> impl Strategy<Value = Rational> {
    prop_oneof![
        Just(Rational::new()),
        Just(Rational::from(1)),
        Just(Rational::from(2)),
        Just(Rational::from(5)),
        Just(Rational::from((1, 2))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn three_term_recurrence_is_exact(n in 1usize..60, x in small_rational()) {
        let lo = hermite_rationals(n - 1);
        let mid = hermite_rationals(n);
        let hi = hermite_rationals(n + 1);
        let left = eval_rat(&hi, &x);
        let right = Rational::from(&x * &eval_rat(&mid, &x))
            - Rational::from((n as u64, 2)) * eval_rat(&lo, &x);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn derivative_lowers_degree_with_factor_n(n in 1usize..50) {
        let cur = hermite_rationals(n);
        let below = hermite_rationals(n - 1);
        for (k, c) in below.iter().enumerate() {
            let derived = Rational::from((k as u64 + 1, 1)) * &cur[k + 1];
            prop_assert_eq!(derived, Rational::from(n as u64) * c);
        }
    }

    #[test]
    fn members_have_their_degree_parity(n in 0usize..70, x in small_rational()) {
        let cs = hermite_rationals(n);
        let neg = Rational::from(-&x);
        let direct = eval_rat(&cs, &x);
        let mirrored = eval_rat(&cs, &neg);
        let expected = if n % 2 == 0 { direct } else { -direct };
        prop_assert_eq!(mirrored, expected);
        prop_assert_eq!(hermite_at_zero_rational(n), cs[0].clone());
    }

    #[test]
    fn norm_squares_obey_the_halving_recurrence(n in 1usize..80) {
        let above = hermite_norm_sq_rational(n);
        let below = hermite_norm_sq_rational(n - 1);
        prop_assert_eq!(above, below * Rational::from((n as u64, 2)));
    }

    #[test]
    fn kernel_is_symmetric_under_argument_swap(
        n in 0usize..18,
        i in 0usize..4,
        j in 0usize..4,
        xr in small_rational(),
        yr in small_rational(),
    ) {
        let prec = 256;
        let x = Real::from_rational(&xr, prec);
        let y = Real::from_rational(&yr, prec);
        let a = kernel_sum(n, i, j, &x, &y);
        let b = kernel_sum(n, j, i, &y, &x);
        // Same terms, same order, multiplications commuted: identical floats.
        prop_assert_eq!(a.as_float(), b.as_float());
    }

    #[test]
    fn kernel_vanishes_at_origin_for_odd_order_sums(n in 0usize..25, i in 0usize..4, pick in 0usize..2) {
        // j differs from i by an odd amount, so every term carries a factor
        // that is zero exactly.
        let j = (i + 2 * pick + 1) % 4;
        prop_assume!((i + j) % 2 == 1);
        let prec = 192;
        let zero = Real::zero(prec);
        let v = kernel_sum(n, i, j, &zero, &zero);
        prop_assert_eq!(v.to_f64(), 0.0);
    }

    #[test]
    fn orthogonalized_members_stay_monic_and_parity_clean(
        n in 0usize..24,
        m0 in small_mass(),
        m1 in small_mass(),
    ) {
        let prec = 256;
        let case = TwoByTwoCase::diagonal(m0, m1).unwrap();
        let p = q_poly(n, &case, prec).unwrap();
        prop_assert_eq!(p.degree(), n);
        prop_assert!((p.coeff(n) - &Real::one(prec)).abs().to_f64() < 1e-70);
        // Diagonal mass matrices keep the inner product parity-respecting,
        // so coefficients of the wrong parity vanish.
        for k in (1 - n % 2..n).step_by(2) {
            prop_assert!(p.coeff(k).abs().to_f64() < 1e-70, "coeff {} of degree {}", k, n);
        }
    }

    #[test]
    fn coupled_members_stay_monic(
        n in 0usize..20,
        m0 in small_mass(),
        m1 in small_mass(),
        numer in -3i64..=3,
    ) {
        let prec = 256;
        // lambda = (numer/3) * min(m0, m1) keeps the mass block positive
        // semidefinite, touching rank one at |numer| = 3 with m0 = m1.
        let lam = Rational::from((numer, 3)) * m0.clone().min(m1.clone());
        let case = TwoByTwoCase::new(m0, m1, lam).unwrap();
        let p = q_poly(n, &case, prec).unwrap();
        prop_assert_eq!(p.degree(), n);
        prop_assert!((p.coeff(n) - &Real::one(prec)).abs().to_f64() < 1e-70);
    }

    #[test]
    fn rising_factorial_shifts_by_one_factor(a in small_rational(), k in 0u32..20) {
        let lhs = pochhammer(&a, k + 1);
        let shift = Rational::from(k) + &a;
        prop_assert_eq!(lhs, pochhammer(&a, k) * shift);
    }

    #[test]
    fn half_line_masses_pick_up_squared_scale_factors(
        ms in prop::collection::vec(small_mass(), 1..=3),
    ) {
        let flat: Vec<Rational> = ms.iter().flat_map(|m| [m.clone(), m.clone()]).collect();
        let (even, odd) = mass_map(&flat).unwrap();
        for (i, m) in ms.iter().enumerate() {
            let base = Rational::from(i as u64 + 1);
            let pe = pochhammer(&base, i as u32);
            let po = pochhammer(&base, i as u32 + 1);
            prop_assert_eq!(even[i].clone(), Rational::from(&pe * &pe) * m);
            prop_assert_eq!(odd[i].clone(), Rational::from(&po * &po) * m);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn consecutive_degrees_interlace(n in 2usize..40) {
        let prec = 96;
        let a = hermite_zeros(n, prec).unwrap();
        let b = hermite_zeros(n + 1, prec).unwrap();
        prop_assert!(interlace_check(&a, &b));
    }

    #[test]
    fn general_sweep_agrees_with_the_symmetric_fold(n in 2usize..14) {
        let prec = 160;
        let p = hermite_monic(n, prec + 2 * n as u32 + 64);
        let swept = real_zeros(&p, false).unwrap();
        let folded = hermite_zeros(n, prec).unwrap();
        prop_assert_eq!(swept.positive_zeros.len(), folded.positive_zeros.len());
        for (a, b) in swept.positive_zeros.iter().zip(&folded.positive_zeros) {
            prop_assert!((a - b).abs().to_f64() < 1e-25);
        }
    }

    #[test]
    fn order_recurrence_holds_at_random_points(
        num in prop::sample::select(vec![1i64, 3, 5, 7, 9, 11]),
        xr in (1i64..=64).prop_map(|k| Rational::from((k, 8))),
    ) {
        let prec = 256;
        let alpha = Rational::from((num, 2));
        let below = Rational::from((num - 2, 2));
        let above = Rational::from((num + 2, 2));
        let x = Real::from_rational(&xr, prec);
        let lhs = &bessel_j(&below, &x) + &bessel_j(&above, &x);
        let rhs = &(&Real::from_rational(&Rational::from(2 * &alpha), prec)
            / &x)
            * &bessel_j(&alpha, &x);
        prop_assert!((&lhs - &rhs).abs().to_f64() < 1e-60);
    }

    #[test]
    fn folding_residuals_stay_flat(
        ms in prop::collection::vec(small_mass(), 1..=2),
        n in 0usize..9,
    ) {
        let prec = 256;
        let flat: Vec<Rational> = ms.iter().flat_map(|m| [m.clone(), m.clone()]).collect();
        let res = symmetrization_residual(&flat, n, prec).unwrap();
        prop_assert!(res.to_f64() < 1e-55);
    }
}

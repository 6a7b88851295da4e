//! Randomized invariants over exact rational parameters.

use num_rational::BigRational;
use proptest::prelude::*;
use qreflect_core::affine::Gradation;
use qreflect_core::glrep::oscillator_rep;
use qreflect_core::rational::*;
use qreflect_core::reflection::*;
use qreflect_core::report::Report;
use qreflect_core::scalars::{gamma_ratio, poch_ratio, qnum, Field};

fn r(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

/// Nonzero rationals with small numerator and denominator.
fn small() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=5).prop_map(|(n, d)| r(n, d))
}

/// Deformation parameters away from the roots of unity `±1`.
fn deformation() -> impl Strategy<Value = BigRational> {
    small().prop_filter("q != ±1", |q| q.magnitude() != 1.0)
}

fn generic_pair() -> impl Strategy<Value = (BigRational, BigRational)> {
    (deformation(), deformation()).prop_filter("x ≠ ±y, xy ≠ ±1", |(x, y)| {
        let one = r(1, 1);
        let xy = x.clone() * y;
        x != y && x != &-y.clone() && xy != one && xy != -one
    })
}

fn gradation(n: usize, mixed: bool) -> Gradation {
    if mixed {
        Gradation::new((0..n).map(|k| [2, 1, 1, 3][k % 4]).collect()).unwrap()
    } else {
        Gradation::principal(n)
    }
}

fn clean(report: &Report) -> Result<(), TestCaseError> {
    prop_assert!(report.all_pass(), "{}", report.describe_failures());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qnum_is_balanced_and_odd(n in -8i64..=8, q in deformation()) {
        let forward = qnum(n, &q).unwrap();
        prop_assert_eq!(&forward, &qnum(n, &q.inv().unwrap()).unwrap());
        prop_assert_eq!(&-forward.clone(), &qnum(-n, &q).unwrap());
        let lhs = (q.clone() - q.inv().unwrap()) * &forward;
        prop_assert_eq!(lhs, q.powi(n).unwrap() - q.powi(-n).unwrap());
    }

    #[test]
    fn poch_ratio_composes(alpha in small(), base in deformation(), n in -4i64..=4, k in -4i64..=4) {
        let whole = poch_ratio(&alpha, &base, n + k);
        let first = poch_ratio(&alpha, &base, n);
        let shifted = alpha.clone() * base.powi(n).unwrap();
        let second = poch_ratio(&shifted, &base, k);
        if let (Ok(whole), Ok(first), Ok(second)) = (whole, first, second) {
            prop_assert_eq!(whole, first * second);
        }
    }

    #[test]
    fn gamma_ratio_composes(z in small(), n in -5i64..=5, k in -5i64..=5) {
        let whole = gamma_ratio(&z, n + k);
        let first = gamma_ratio(&z, n);
        let second = gamma_ratio(&(z.clone() + BigRational::from_int(n)), k);
        if let (Ok(whole), Ok(first), Ok(second)) = (whole, first, second) {
            prop_assert_eq!(whole, first * second);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn k_matrix_solves_reflection(
        n in 2usize..=4,
        a_frac in 0.0f64..=1.0,
        mixed in any::<bool>(),
        q in deformation(),
        (x, y) in generic_pair(),
        eps in (small(), small()),
    ) {
        let a = (a_frac * n as f64).round() as usize;
        let bp = BoundaryParams::new(a, eps.0, eps.1).unwrap();
        clean(&check_reflection_matrix(n, &gradation(n, mixed), &bp, &q, &x, &y))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn k_operator_is_defined_up_to_scale(
        m in 0i64..=2,
        a in 0usize..=2,
        mixed in any::<bool>(),
        q in deformation(),
        (x, y) in generic_pair(),
        c in small(),
    ) {
        let rep = oscillator_rep(2, m, q).unwrap();
        let grad = gradation(2, mixed);
        let bp = BoundaryParams::new(a, r(2, 3), r(-5, 7)).unwrap();
        let kappa = k_operator(&rep, &grad, &bp, &x);
        prop_assume!(kappa.is_ok());
        let kappa = kappa.unwrap();
        clean(&check_reflection_with(&rep, &grad, &bp, &x, &y, &kappa, "normalized"))?;
        clean(&check_reflection_with(&rep, &grad, &bp, &x, &y, &kappa.scaled(&c), "rescaled"))?;
    }

    #[test]
    fn perturbed_k_operator_is_rejected(
        m in 1i64..=2,
        q in deformation(),
        (x, y) in generic_pair(),
    ) {
        let rep = oscillator_rep(2, m, q).unwrap();
        let grad = Gradation::principal(2);
        let bp = BoundaryParams::new(1, r(2, 3), r(-5, 7)).unwrap();
        let kappa = k_operator(&rep, &grad, &bp, &x);
        prop_assume!(kappa.is_ok());
        let bad = kappa.unwrap().perturbed(rep.dim() - 1, &r(1001, 1000));
        let report = check_reflection_with(&rep, &grad, &bp, &x, &y, &bad, "perturbed");
        prop_assert!(report.has_failures());
    }

    #[test]
    fn rational_k_operator_solves_reflection_up_to_scale(
        n in 2usize..=3,
        m in 1i64..=2,
        a_frac in 0.0f64..=1.0,
        p in small(),
        u in small(),
        v in small(),
        c in small(),
    ) {
        prop_assume!(u != v && u != -v.clone());
        let a = (a_frac * n as f64).round() as usize;
        let rep = classical_rep(n, m).unwrap();
        let params = RationalParams::new(p, a, Gradation::principal(n)).unwrap();
        let limit = rational_k_operator_limit(&rep, &params, &u, RationalForm::Primary);
        prop_assume!(limit.is_ok());
        let (kappa, _) = limit.unwrap();
        clean(&check_rational_reflection_with(&rep, &params, &u, &v, &kappa, "normalized"))?;
        clean(&check_rational_reflection_with(&rep, &params, &u, &v, &kappa.scaled(&c), "rescaled"))?;
    }
}

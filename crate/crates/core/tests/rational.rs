use num_rational::BigRational;
use qreflect_core::affine::Gradation;
use qreflect_core::rational::*;
use qreflect_core::report::Report;
use qreflect_core::scalars::{Field, Matrix};

fn r(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

fn assert_clean(report: &Report) {
    assert!(report.all_pass(), "{}", report.describe_failures());
}

fn params(n: usize, a: usize, p: BigRational) -> RationalParams<BigRational> {
    RationalParams::new(p, a, Gradation::principal(n)).unwrap()
}

#[test]
fn classical_rep_is_gl_n() {
    let fund = classical_rep(2, 1).unwrap();
    assert_eq!(fund.gen(1, 2), &Matrix::unit(2, 1, 2));
    assert_eq!(fund.gen(2, 1), &Matrix::unit(2, 2, 1));
    for n in 2..=3 {
        for m in 0..=3 {
            assert_clean(&check_classical_gl(&classical_rep(n, m).unwrap()));
        }
    }
}

#[test]
fn rational_operators_match_displayed_forms() {
    let rep = classical_rep(3, 2).unwrap();
    let s = r(3, 1);
    let l0 = rational_l(&rep, &s, &r(0, 1));
    assert_eq!(l0, rational_lbar(&rep, &s, &r(0, 1)));
    let u = r(2, 7);
    let diff = rational_l(&rep, &s, &u).to_matrix() - rational_lbar(&rep, &s, &u).to_matrix();
    assert_eq!(diff, Matrix::identity(3 * rep.dim()).scale(&(r(2, 1) * &s * &u)));
    let w = r(-5, 3);
    let shifted = rational_l(&rep, &s, &(u.clone() + &w)).to_matrix();
    let expected = &rational_l(&rep, &s, &u).to_matrix() + &Matrix::identity(3 * rep.dim()).scale(&(s * &w));
    assert_eq!(shifted, expected);

    let pr = RationalParams::new(r(2, 1), 1, Gradation::principal(3)).unwrap();
    assert_eq!(
        rational_k_matrix(3, &pr, &r(1, 1)),
        Matrix::from_diag(vec![r(5, 1), r(-1, 1), r(-1, 1)])
    );
    let full = params(3, 3, r(2, 1));
    assert_eq!(rational_k_matrix(3, &full, &r(1, 1)), Matrix::identity(3).scale(&r(5, 1)));
    assert_eq!(rational_k_matrix(3, &pr, &r(0, 1)), Matrix::identity(3).scale(&r(2, 1)));
}

#[test]
fn gamma_ratio_normalization() {
    let (su, p) = (r(3, 5), r(-2, 7));
    assert_eq!(rational_kappa_at(0, 0, &su, &p, RationalForm::Primary).unwrap(), r(1, 1));
    assert_eq!(rational_kappa_at(1, 0, &su, &p, RationalForm::Primary).unwrap(), -su.clone() - &p);
}

#[test]
fn rational_reflection_equation() {
    for n in 2..=3 {
        for m in 1..=3 {
            let rep = classical_rep(n, m).unwrap();
            for a in 0..=n {
                let pr = params(n, a, r(-2, 7));
                assert_clean(&check_rational_reflection(&rep, &pr, &r(3, 5), &r(-4, 3)));
                assert_clean(&check_rational_reflection(&rep, &pr, &r(3, 5), &r(3, 5)));
                assert_clean(&check_rational_intertwining(&rep, &pr, &r(3, 5)));
                assert_clean(&check_rational_forms(&rep, &pr, &r(3, 5)));
                let conditions = check_rational_conditions(&rep, a);
                if a == 0 || a == n {
                    assert!(!conditions.has_failures(), "{}", conditions.describe_failures());
                } else {
                    assert_clean(&conditions);
                }
            }
        }
    }
}

#[test]
fn rational_kappa_scale_invariance() {
    let rep = classical_rep(3, 2).unwrap();
    let pr = params(3, 1, r(5, 4));
    let kappa = rational_k_operator(&rep, &pr, &r(1, 3), RationalForm::Primary).unwrap();
    assert_clean(&check_rational_reflection_with(&rep, &pr, &r(1, 3), &r(2, 9), &kappa.scaled(&r(-7, 2)), "scaled"));
}

#[test]
fn cross_block_relation_at_cancelling_argument() {
    // su = -p removes the linear terms on one side.
    let rep = classical_rep(3, 2).unwrap();
    let pr = params(3, 2, r(-3, 1));
    assert_clean(&check_rational_intertwining(&rep, &pr, &r(1, 1)));
}

#[test]
fn float_limits_of_l_and_k() {
    for n in 2..=3 {
        let g = Gradation::principal(n);
        for m in 1..=2 {
            assert_clean(&check_l_limit(n, m, &g, 0.37, &[3, 4, 5, 6]));
        }
        for a in 0..=n {
            assert_clean(&check_k_matrix_limit(n, &g, 0.6, a, 0.37, &[3, 4, 5, 6]));
        }
    }
    let g = Gradation::new(vec![2, 1]).unwrap();
    assert_clean(&check_l_limit(2, 2, &g, -0.21, &[3, 4, 5, 6]));
}

#[test]
fn float_limit_of_k_operator() {
    for n in 2..=3 {
        let g = Gradation::principal(n);
        for a in 1..n {
            for m in 1..=3 {
                assert_clean(&check_k_operator_convergence(n, m, &g, 0.6, a, 0.37));
            }
        }
    }
}

#[test]
fn k_operator_limit_at_pinned_step() {
    let g = Gradation::principal(2);
    assert_clean(&check_k_operator_limit(2, 1, &g, 0.6, 1, 0.37, K_LIMIT_STEP));
    // Beyond m = 1 the first-order error exceeds the pinned tolerance.
    let report = check_k_operator_limit(2, 2, &g, 0.6, 1, 0.37, K_LIMIT_STEP);
    assert!(report.has_failures());
}

use num_rational::BigRational;
use qreflect_core::affine::Gradation;
use qreflect_core::glrep::{fundamental_rep, oscillator_rep};
use qreflect_core::reflection::*;
use qreflect_core::report::Report;
use qreflect_core::scalars::{Complex64, Field};

fn r(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

fn assert_clean(report: &Report) {
    assert!(report.all_pass(), "{}", report.describe_failures());
}

fn gradations(n: usize) -> Vec<Gradation> {
    let mixed: Vec<i64> = (0..n).map(|k| [2, 1, 1, 3][k % 4]).collect();
    vec![Gradation::principal(n), Gradation::new(mixed).unwrap()]
}

fn boundaries(n: usize) -> Vec<BoundaryParams<BigRational>> {
    let mut out = Vec::new();
    for a in 0..=n {
        out.push(BoundaryParams::new(a, r(2, 3), r(-5, 7)).unwrap());
        out.push(BoundaryParams::new(a, r(0, 1), r(3, 2)).unwrap());
        out.push(BoundaryParams::new(a, r(4, 3), r(0, 1)).unwrap());
    }
    out
}

#[test]
fn boundary_params_reject_vanishing_pair() {
    assert!(BoundaryParams::new(1, r(0, 1), r(0, 1)).is_err());
}

#[test]
fn k_matrix_satisfies_matrix_reflection_equation() {
    for n in 2..=4 {
        for g in gradations(n) {
            for bp in boundaries(n) {
                assert_clean(&check_reflection_matrix(n, &g, &bp, &r(3, 2), &r(2, 5), &r(-7, 3)));
            }
        }
    }
}

#[test]
fn fundamental_k_operator_matches_k_matrix() {
    for n in 2..=4 {
        for g in gradations(n) {
            for bp in boundaries(n) {
                assert_clean(&check_fundamental_kappa(n, &g, &bp, &r(5, 3), &r(-3, 4)));
            }
        }
    }
}

#[test]
fn operator_reflection_equation_on_oscillators() {
    for n in 2..=3 {
        for m in 0..=3 {
            let rep = oscillator_rep(n, m, r(3, 2)).unwrap();
            for g in gradations(n) {
                for bp in boundaries(n) {
                    assert_clean(&check_reflection_l(&rep, &g, &bp, &r(2, 3), &r(-5, 4)));
                }
            }
        }
    }
}

#[test]
fn operator_reflection_equation_rank_four() {
    let rep = oscillator_rep(4, 2, r(4, 3)).unwrap();
    let g = Gradation::new(vec![2, 1, 1, 3]).unwrap();
    for a in [0, 2, 3] {
        let bp = BoundaryParams::new(a, r(3, 5), r(7, 2)).unwrap();
        assert_clean(&check_reflection_l(&rep, &g, &bp, &r(3, 2), &r(-2, 7)));
    }
}

#[test]
fn reflection_is_scale_invariant_and_detects_perturbation() {
    let rep = oscillator_rep(3, 2, r(3, 2)).unwrap();
    let g = Gradation::principal(3);
    let bp = BoundaryParams::new(1, r(2, 3), r(-5, 7)).unwrap();
    let (x, y) = (r(2, 3), r(-5, 4));
    let kappa = k_operator(&rep, &g, &bp, &x).unwrap();
    assert_clean(&check_reflection_with(&rep, &g, &bp, &x, &y, &kappa.scaled(&r(-11, 3)), "scaled"));
    for v in [0, 3, rep.dim() - 1] {
        assert_clean(&check_negative_control(&rep, &g, &bp, &x, &y, v, &r(1001, 1000)));
    }
}

#[test]
fn branches_agree_and_degenerate_to_monomials() {
    for n in 2..=3 {
        for m in 0..=2 {
            let rep = oscillator_rep(n, m, r(5, 2)).unwrap();
            for g in gradations(n) {
                for bp in boundaries(n) {
                    assert_clean(&check_kop_branches(&rep, &g, &bp, &r(-3, 5)));
                    assert_clean(&check_kappa_weight_function(&rep, &g, &bp, &r(-3, 5)));
                }
            }
        }
    }
}

#[test]
fn intertwining_relations_and_constraints() {
    for n in 2..=4 {
        let max_m = if n == 4 { 1 } else { 3 };
        for m in 0..=max_m {
            let rep = oscillator_rep(n, m, r(3, 2)).unwrap();
            for a in 0..=n {
                assert_clean(&check_constraints(&rep, a));
            }
            for g in gradations(n) {
                for bp in boundaries(n) {
                    assert_clean(&check_intertwining_suite(&rep, &g, &bp, &r(-2, 5)));
                }
            }
        }
    }
}

#[test]
fn constraints_fail_on_fundamental_perturbation() {
    let rep = fundamental_rep(3, r(3, 2)).unwrap();
    let bad = rep.perturbed(3, 1, 0, 2, r(1, 7));
    assert_clean(&check_constraints(&rep, 1));
    assert!(check_constraints(&bad, 1).has_failures());
}

#[test]
fn literal_variants_are_proportional_in_their_regimes() {
    for q_abs in [0.7, 1.3] {
        let q = Complex64::from_polar(q_abs, 0.3);
        for n in 2..=3 {
            let rep = oscillator_rep(n, 2, q).unwrap();
            let g = Gradation::principal(n);
            for a in 1..n {
                let bp = BoundaryParams::new(a, Complex64::new(0.8, 0.1), Complex64::new(-1.1, 0.4)).unwrap();
                let report = check_kop_variants(&rep, &g, &bp, &Complex64::new(0.9, 0.2));
                assert_clean(&report);
                assert_eq!(report.entries.len(), 2);
            }
        }
    }
}

#[test]
fn float_reflection_equation() {
    let q = Complex64::from_polar(0.8, 0.4);
    let rep = oscillator_rep(3, 2, q).unwrap();
    let g = Gradation::new(vec![2, 1, 1]).unwrap();
    let bp = BoundaryParams::new(2, Complex64::new(0.5, -0.2), Complex64::new(1.2, 0.3)).unwrap();
    let x = Complex64::new(0.7, 0.3);
    let y = Complex64::from_ratio(-5, 4);
    assert_clean(&check_reflection_l(&rep, &g, &bp, &x, &y));
}

use num_rational::BigRational;
use qreflect_core::affine::*;
use qreflect_core::glrep::{fundamental_rep, oscillator_rep, oscillator_rep_generic};
use qreflect_core::report::{Report, Status};
use qreflect_core::scalars::{Complex64, Field, Matrix};

fn r(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

fn assert_clean(report: &Report) {
    assert!(report.all_pass(), "{}", report.describe_failures());
}

fn gradations(n: usize) -> Vec<Gradation> {
    let mut out = vec![Gradation::principal(n)];
    let mixed: Vec<i64> = (0..n).map(|k| [2, 1, 1, 3][k % 4]).collect();
    out.push(Gradation::new(mixed).unwrap());
    out
}

#[test]
fn gradation_partial_sums() {
    let g = Gradation::new(vec![2, 1, 1, 3]).unwrap();
    assert_eq!(g.xis(), &[7, 5, 4, 3]);
    assert_eq!(g.total(), 7);
    for k in 1..4 {
        assert_eq!(g.xi(k) - g.xi(k + 1), g.s_k(k));
    }
    assert!(Gradation::new(vec![1, 0]).is_err());
    let rev = g.reversed();
    assert_eq!(rev.entries(), &[-1, -1, -2, -3]);
}

#[test]
fn evaluation_of_fundamental_rank_two() {
    let g = Gradation::new(vec![1, 2]).unwrap();
    let rep = fundamental_rep(2, r(3, 2)).unwrap();
    let x = r(-2, 5);
    let ev = evaluate(&rep, &g, &x, Variant::Ev).unwrap();
    assert_eq!(ev.e(2), &Matrix::unit(2, 2, 1).scale(&x.powi(2).unwrap()));
    assert_eq!(ev.k(1), rep.gen(1, 1));
    assert!(evaluate(&rep, &g, &r(0, 1), Variant::Ev).is_err());
}

#[test]
fn affine_relations_on_oscillators() {
    for n in 2..=4 {
        for m in 0..=2 {
            let rep = oscillator_rep(n, m, r(5, 3)).unwrap();
            for g in gradations(n) {
                for variant in [Variant::Ev, Variant::EvBar] {
                    let gens = evaluate(&rep, &g, &r(-3, 4), variant).unwrap();
                    assert_clean(&check_affine_serre(&gens));
                }
            }
        }
    }
}

#[test]
fn r_matrix_matches_fundamental_l_operator() {
    for n in 2..=4 {
        for g in gradations(n) {
            assert_clean(&check_r_consistency(n, &g, &r(7, 3), &r(2, 5)));
        }
    }
    let g = Gradation::principal(2);
    let rm = build_r(&g, &r(3, 2), &r(1, 3)).unwrap();
    let expected = r(3, 2) - r(1, 9) * r(2, 3);
    assert_eq!(rm.get(0, 0), &expected);
}

#[test]
fn l_operator_limits_and_blocks() {
    let rep = oscillator_rep(3, 2, r(3, 2)).unwrap();
    let g = Gradation::new(vec![1, 2, 1]).unwrap();
    let op = l_operator(&rep, &g).unwrap();
    let lim = op.at_zero().expect("non-negative powers for positive gradation");
    for k in 1..=3 {
        for j in 1..=3 {
            let expected = if k == j {
                rep.qpow(&[(k, 1)], 0)
            } else {
                Matrix::square_zeros(rep.dim())
            };
            assert_eq!(lim.block(k, j), &expected);
        }
    }
    let x = r(2, 7);
    let l = build_l(&rep, &g, &x).unwrap();
    let d = r(3, 2) - r(2, 3);
    let expected = (rep.gen(1, 2) * &rep.qpow(&[(1, 1)], 0))
        .scale(&(d * x.powi(-g.xi(2) + g.xi(1)).unwrap()));
    assert_eq!(l.block(2, 1), &expected);
}

#[test]
fn l_operators_are_weight_zero() {
    for n in 2..=4 {
        let rep = oscillator_rep(n, 2, r(4, 3)).unwrap();
        for g in gradations(n) {
            assert_clean(&check_weight_zero(&rep, &g));
        }
    }
}

#[test]
fn l_intertwining_relations() {
    for n in 2..=3 {
        for m in 0..=2 {
            let rep = oscillator_rep(n, m, r(5, 2)).unwrap();
            for g in gradations(n) {
                for which in [Which::L, Which::LBar] {
                    let rep_ = check_l_intertwining(&rep, &g, &r(3, 7), &r(-5, 2), which);
                    assert_clean(&rep_);
                }
            }
        }
    }
}

#[test]
fn index_reversal_maps_l_to_lbar() {
    for n in 2..=4 {
        for m in 1..=2 {
            let rep = oscillator_rep(n, m, r(5, 2)).unwrap();
            for g in gradations(n) {
                assert_clean(&check_trans_lb(&rep, &g, &r(-2, 3)));
            }
        }
        let fund = fundamental_rep(n, r(2, 7)).unwrap();
        assert_clean(&check_trans_lb(&fund, &Gradation::principal(n), &r(3, 5)));
    }
}

#[test]
fn gradation_covariance() {
    for n in 2..=3 {
        let rep = oscillator_rep(n, 2, r(3, 4)).unwrap();
        for g in gradations(n) {
            assert_clean(&check_gradation_covariance(&rep, &g, &r(-4, 3)));
        }
    }
}

#[test]
fn ybe_principal_gradation() {
    for n in 2..=3 {
        let g = Gradation::principal(n);
        assert_clean(&check_ybe(&g, &r(3, 2), &r(2, 5), &r(-3, 7), &r(5, 4)));
    }
}

#[test]
fn ybe_general_gradation_is_reported() {
    let g = Gradation::new(vec![2, 1, 3]).unwrap();
    let rep = check_ybe(&g, &r(3, 2), &r(2, 5), &r(-3, 7), &r(5, 4));
    assert!(rep.entries.iter().all(|e| e.status == Status::Finding));
}

#[test]
fn ev_and_evbar_differ_by_central_factor() {
    for (n, m) in [(3, 2), (2, 3), (4, 2), (3, 1)] {
        let rep = oscillator_rep(n, m, r(7, 5)).unwrap();
        for g in gradations(n) {
            assert_clean(&check_ev_evbar(&rep, &g, &r(3, 2)));
        }
    }
}

#[test]
fn llbar_product_exact_with_root() {
    for n in 2..=3 {
        for m in 0..=3 {
            for g in gradations(n) {
                let root = r(4, 3);
                let q = root.powi(g.total()).unwrap();
                let rep = oscillator_rep(n, m, q).unwrap();
                assert_clean(&check_llbar_product(&rep, &g, &r(-5, 2), Some(&root)));
            }
        }
    }
}

#[test]
fn llbar_product_float_generic_weight() {
    let rep = oscillator_rep_generic(2, 1.7, 8, 3, Complex64::new(1.2, 0.0)).unwrap();
    let report = check_llbar_product(&rep, &Gradation::principal(2), &Complex64::new(0.8, 0.1), None);
    assert!(!report.has_failures(), "{}", report.describe_failures());
}

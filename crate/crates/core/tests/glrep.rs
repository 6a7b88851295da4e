use num_traits::Zero;
use num_rational::BigRational;
use qreflect_core::glrep::*;
use qreflect_core::report::Report;
use qreflect_core::scalars::{Complex64, Field, Matrix};

fn q(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

fn assert_clean(report: &Report) {
    assert!(!report.is_empty());
    assert!(report.all_pass(), "{}", report.describe_failures());
}

#[test]
fn fundamental_generators_are_matrix_units() {
    let rep = fundamental_rep(3, q(3, 2)).unwrap();
    assert_eq!(rep.gen(1, 2), &Matrix::unit(3, 1, 2));
    assert_eq!(rep.genbar(3, 1), &Matrix::unit(3, 3, 1));
    let rep2 = fundamental_rep(2, q(2, 3)).unwrap();
    assert_eq!(rep2.weight(0), &[1, 0]);
    assert!(fundamental_rep(1, q(2, 3)).is_err());
}

#[test]
fn fundamental_relations_hold_exactly() {
    for n in 2..=4 {
        let rep = fundamental_rep(n, q(3, 2)).unwrap();
        assert_clean(&check_gl_relations(&rep));
        assert_clean(&check_root_relations(&rep));
    }
}

#[test]
fn oscillator_dimension_and_vacuum() {
    let rep = oscillator_rep(3, 2, q(3, 2)).unwrap();
    assert_eq!(rep.dim(), 6);
    assert_eq!(rep.basis()[0], vec![0, 0]);
    for i in 1..=3 {
        let expected = if i == 1 { 2 } else { 0 };
        assert_eq!(rep.gen(i, i).get(0, 0), &BigRational::from_integer(expected.into()));
    }
    for j in 1..3 {
        let col_zero = (0..rep.dim()).all(|r| rep.gen(j, j + 1).get(r, 0).is_zero());
        assert!(col_zero);
    }
    let trivial = oscillator_rep(4, 0, q(5, 3)).unwrap();
    assert_eq!(trivial.dim(), 1);
    for i in 1..=4 {
        for j in 1..=4 {
            if i != j {
                assert!(trivial.gen(i, j).is_zero());
            }
        }
    }
    assert!(oscillator_rep(3, -1, q(3, 2)).is_err());
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
}

#[test]
fn oscillator_dimension_formula() {
    for n in 2..=5usize {
        for m in 0..=4i64 {
            let rep = oscillator_rep(n, m, q(2, 5)).unwrap();
            assert_eq!(rep.dim() as u64, binomial(m as u64 + n as u64 - 1, n as u64 - 1));
        }
    }
}

#[test]
fn oscillator_at_m1_is_fundamental() {
    for n in 2..=4 {
        let osc = oscillator_rep(n, 1, q(7, 3)).unwrap();
        let fun = fundamental_rep(n, q(7, 3)).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(osc.gen(i, j), fun.gen(i, j), "e_{i}{j}");
                assert_eq!(osc.genbar(i, j), fun.genbar(i, j), "ebar_{i}{j}");
            }
        }
    }
}

#[test]
fn oscillator_relations_hold_exactly() {
    for n in 2..=4 {
        for m in 1..=3 {
            let rep = oscillator_rep(n, m, q(3, 2)).unwrap();
            assert_clean(&check_gl_relations(&rep));
            assert_clean(&check_root_relations(&rep));
            let indep = check_recursion_independence(&rep);
            assert!(!indep.has_failures(), "{}", indep.describe_failures());
            assert_eq!(indep.is_empty(), n == 2);
        }
    }
}

#[test]
fn derived_root_vectors_match_closed_forms() {
    for n in 3..=4 {
        for m in 1..=3 {
            let rep = oscillator_rep(n, m, q(-5, 2)).unwrap();
            let derived = derive_root_vectors(&rep);
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(rep.gen(i, j), derived.gen(i, j), "e_{i}{j} m={m}");
                    assert_eq!(rep.genbar(i, j), derived.genbar(i, j), "ebar_{i}{j} m={m}");
                }
            }
        }
    }
    let fun = derive_root_vectors(&fundamental_rep(3, q(3, 2)).unwrap());
    assert_eq!(fun.gen(1, 3), &Matrix::unit(3, 1, 3));
}

#[test]
fn perturbed_generator_is_detected() {
    let rep = oscillator_rep(3, 2, q(3, 2)).unwrap();
    let bad = rep.perturbed(1, 2, 0, 1, BigRational::from_integer(1.into()));
    assert!(check_gl_relations(&bad).has_failures());
}

#[test]
fn float_mode_relations_within_tolerance() {
    let rep = oscillator_rep(3, 2, Complex64::new(0.83, 0.21)).unwrap();
    assert_clean(&check_gl_relations(&rep));
    assert_clean(&check_root_relations(&rep));
}

#[test]
fn generic_weight_interior_relations() {
    let rep = oscillator_rep_generic(3, 2.5, 6, 2, Complex64::new(1.1, 0.0)).unwrap();
    assert!(rep.interior().unwrap().iter().any(|&b| !b));
    assert_clean(&check_gl_relations(&rep));
    assert_clean(&check_root_relations(&rep));
    let _ = rep.q().magnitude();
}

#[test]
fn every_root_relation_family_is_exercised_at_rank_four() {
    let rep = oscillator_rep(4, 2, q(3, 2)).unwrap();
    let report = check_root_relations(&rep);
    assert_clean(&report);
    let families = [
        "recursion-desc", "recursion-asc", "root-pair", "dcba-product", "dcba-vanish",
        "dcba-left-weight", "dcba-right-weight", "chain-right", "chain-left", "link-right",
        "link-left", "shared-column", "shared-row",
    ];
    for fam in families {
        for lab in ["plain", "bar"] {
            let tag = format!("{fam}/{lab}");
            assert!(report.with_tag(&tag).next().is_some(), "{tag} not exercised");
        }
    }
    for fam in ["split", "split-bar", "weighted-below", "weighted-below-bar", "weighted-above", "weighted-above-bar", "bracket-step-up", "bracket-step-down", "bracket-shift"] {
        assert!(report.with_tag(fam).next().is_some(), "{fam} not exercised");
    }
    let shift = report
        .entries
        .iter()
        .find(|e| e.tag == "bracket-shift" && e.witness.as_deref() == Some("i=1,j=4,l=3"));
    assert!(shift.is_some());
}

#[test]
fn top_split_case_on_rank_three_oscillator() {
    let rep = oscillator_rep(3, 2, q(3, 2)).unwrap();
    let report = check_root_relations(&rep);
    let entry = report
        .entries
        .iter()
        .find(|e| e.tag == "split" && e.witness.as_deref() == Some("j=1,l=2,i=3"))
        .expect("instance present");
    assert_eq!(entry.residual, "0");
}

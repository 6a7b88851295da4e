use num_rational::BigRational;
use qreflect_core::affine::{evaluate, Gradation, Variant};
use qreflect_core::glrep::{fundamental_rep, oscillator_rep};
use qreflect_core::onsager::*;
use qreflect_core::reflection::BoundaryParams;
use qreflect_core::report::{Report, Status};
use qreflect_core::scalars::{qcomm, Field, Matrix};

fn r(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

fn assert_clean(report: &Report) {
    assert!(report.all_pass(), "{}", report.describe_failures());
}

const SPLITS: [(usize, usize); 6] = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)];

#[test]
fn root_vectors_nest_as_displayed() {
    let rep = oscillator_rep(3, 2, r(3, 2)).unwrap();
    let gens = evaluate(&rep, &Gradation::principal(3), &r(2, 5), Variant::Ev).unwrap();
    assert_eq!(&root_vector(RootKind::E, 1, 1, &gens).unwrap(), gens.e(1));
    assert_eq!(&root_vector(RootKind::FBar, 2, 2, &gens).unwrap(), gens.f(2));
    let e12 = qcomm(gens.e(1), gens.e(2), gens.q_inv()).unwrap();
    assert_eq!(root_vector(RootKind::E, 1, 2, &gens).unwrap(), e12);
    let f12 = qcomm(gens.f(2), gens.f(1), gens.q()).unwrap();
    assert_eq!(root_vector(RootKind::F, 1, 2, &gens).unwrap(), f12);
    assert!(root_vector(RootKind::E, 1, 3, &gens).is_err());
    assert!(root_vector(RootKind::E, 2, 1, &gens).is_err());
}

#[test]
fn z_elements_follow_case_tables() {
    let rep = oscillator_rep(3, 2, r(3, 2)).unwrap();
    let gens = evaluate(&rep, &Gradation::principal(3), &r(2, 5), Variant::Ev).unwrap();
    let bp = BoundaryParams::new(1, r(2, 3), r(-1, 4)).unwrap();
    let z = build_z(2, 2, &bp, &gens).unwrap();
    assert_eq!(z.case, ZCase::Diagonal);
    assert_eq!(&z.matrix, gens.k(2));
    let corner = build_z(1, 3, &bp, &gens).unwrap();
    assert_eq!(corner.plus.unwrap(), gens.f(3) * &gens.qk(&[(1, 1), (3, -1)], 1));
    let lower = build_z(3, 1, &bp, &gens).unwrap();
    assert_eq!(&lower.plus.unwrap(), gens.e(3));
    assert_eq!(build_z(2, 3, &bp, &gens).unwrap().case, ZCase::Raising);
    assert_eq!(build_z(3, 2, &bp, &gens).unwrap().case, ZCase::Lowering);
    let bad = BoundaryParams::new(3, r(1, 1), r(1, 1)).unwrap();
    assert!(build_z(1, 2, &bad, &gens).is_err());
}

#[test]
fn khat_is_diagonal_and_scaled() {
    let rep = oscillator_rep(2, 2, r(5, 3)).unwrap();
    let gens = evaluate(&rep, &Gradation::principal(2), &r(2, 5), Variant::Ev).unwrap();
    let bp = BoundaryParams::new(1, r(0, 1), r(3, 7)).unwrap();
    let kh = build_khat(1, 2, &bp, &gens).unwrap();
    assert!(kh.plus.is_zero());
    assert!(kh.minus.is_diagonal());
    let bp = BoundaryParams::new(1, r(2, 1), r(3, 7)).unwrap();
    let kh = build_khat(1, 2, &bp, &gens).unwrap();
    assert_eq!(kh.plus, gens.qk(&[(1, 1), (2, -1)], 0).scale(&r(2, 1)));
    assert!(build_khat(2, 2, &bp, &gens).is_err());
}

#[test]
fn rho_closed_forms() {
    for q in [r(3, 2), r(-5, 7), r(2, 9), r(7, 3), r(-4, 5)] {
        let d = q.clone() - q.inv().unwrap();
        assert_eq!(rho_tilde(&q).unwrap() * d, rho(&q).unwrap());
    }
}

#[test]
fn z_intertwines_k_operator() {
    for (n, a) in SPLITS {
        for m in 1..=2 {
            let rep = oscillator_rep(n, m, r(3, 2)).unwrap();
            let g = Gradation::principal(n);
            let bp = BoundaryParams::new(a, r(2, 3), r(-5, 4)).unwrap();
            assert_clean(&check_z_intertwining(&rep, &g, &bp, &r(-3, 7)));
        }
    }
}

#[test]
fn relation_suite_on_oscillators() {
    for (n, a) in SPLITS {
        for m in 1..=2 {
            let rep = oscillator_rep(n, m, r(3, 2)).unwrap();
            let g = Gradation::principal(n);
            let bp = BoundaryParams::new(a, r(2, 3), r(-5, 4)).unwrap();
            let report = check_onsager_genericity(&rep, &g, &bp, &[r(-3, 7), r(5, 2), r(2, 9)]);
            assert_clean(&report);
            assert_clean(&check_ladder_consistency(&rep, &g, &bp, &r(-3, 7)));
        }
    }
}

#[test]
fn fundamental_rank_three_is_exploratory() {
    let rep = fundamental_rep(3, r(3, 2)).unwrap();
    let bp = BoundaryParams::new(1, r(2, 3), r(-5, 4)).unwrap();
    let report = check_onsager_relations(&rep, &Gradation::principal(3), &bp, &r(1, 3));
    assert!(report.entries.iter().all(|e| e.status == Status::Finding));
    let _ = Matrix::<BigRational>::identity(1);
}

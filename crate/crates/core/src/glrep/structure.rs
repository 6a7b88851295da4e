//! Composite operators built from root vectors that appear in the
//! intertwining relations and in the product of the two L-operators.

use crate::scalars::{Field, Matrix};

use super::rep::Rep;

/// `sum_{k in ks} e_ki ebar_jk q^{sign_k e_kk + sign_o e_oo + shift}`,
/// where `(o, sign_o)` names the fixed Cartan index of the weight factor.
fn chain_sum<F: Field>(
    rep: &Rep<F>,
    i: usize,
    j: usize,
    ks: impl Iterator<Item = usize>,
    weight: Option<(i64, usize, i64, i64)>,
) -> Matrix<F> {
    let mut acc = Matrix::square_zeros(rep.dim());
    for k in ks {
        let mut term = rep.gen(k, i) * rep.genbar(j, k);
        if let Some((ck, o, co, shift)) = weight {
            term = &term * &rep.qpow(&[(k, ck), (o, co)], shift);
        }
        acc = &acc + &term;
    }
    acc
}

fn qmq<F: Field>(rep: &Rep<F>) -> F {
    rep.q().clone() - rep.q_inv()
}

/// `A_ji` of the intertwining relations (the branch is fixed by the sign of
/// `j - i`, the splitting index does not enter).
pub fn a_op<F: Field>(rep: &Rep<F>, j: usize, i: usize) -> Matrix<F> {
    assert_ne!(i, j, "A_ji needs i != j");
    let n = rep.rank();
    let d = qmq(rep);
    if i < j {
        let head = rep.gen(j, i) * &rep.qpow(&[(j, -2)], 0);
        let tail = chain_sum(rep, i, j, (j + 1)..=n, Some((-1, j, -1, 1)));
        &head - &tail.scale(&d)
    } else {
        let head = rep.gen(j, i) * &rep.qpow(&[(j, 2)], 0);
        let tail = chain_sum(rep, i, j, 1..j, Some((1, j, 1, -1)));
        &head + &tail.scale(&d)
    }
}

/// `B_ji` for splitting index `a`.
pub fn b_op<F: Field>(rep: &Rep<F>, j: usize, i: usize, a: usize) -> Matrix<F> {
    assert_ne!(i, j, "B_ji needs i != j");
    let d = qmq(rep);
    if i < j {
        let tail = chain_sum(rep, i, j, (a + 1)..j, None);
        rep.gen(j, i) + &tail.scale(&d)
    } else {
        let tail = chain_sum(rep, i, j, (j + 1)..=a, None);
        rep.gen(j, i) - &tail.scale(&d)
    }
}

/// `C_ji` of the intertwining relations.
pub fn c_op<F: Field>(rep: &Rep<F>, j: usize, i: usize) -> Matrix<F> {
    assert_ne!(i, j, "C_ji needs i != j");
    let n = rep.rank();
    let d = qmq(rep);
    if i < j {
        let head = rep.genbar(j, i) * &rep.qpow(&[(i, 2)], -2);
        let tail = chain_sum(rep, i, j, 1..i, Some((1, i, 1, -2)));
        &head + &tail.scale(&d)
    } else {
        let head = rep.genbar(j, i) * &rep.qpow(&[(i, -2)], 2);
        let tail = chain_sum(rep, i, j, (i + 1)..=n, Some((-1, i, -1, 2)));
        &head - &tail.scale(&d)
    }
}

/// `D_ji` for splitting index `a`.
pub fn d_op<F: Field>(rep: &Rep<F>, j: usize, i: usize, a: usize) -> Matrix<F> {
    assert_ne!(i, j, "D_ji needs i != j");
    let d = qmq(rep);
    if i < j {
        let tail = chain_sum(rep, i, j, (i + 1)..=a, None);
        rep.genbar(j, i) - &tail.scale(&d)
    } else {
        let tail = chain_sum(rep, i, j, (a + 1)..i, None);
        rep.genbar(j, i) + &tail.scale(&d)
    }
}

/// `q^{2(c - 1)}` as a diagonal operator.
pub fn central_shift<F: Field>(rep: &Rep<F>) -> Matrix<F> {
    let terms: Vec<(usize, i64)> = (1..=rep.rank()).map(|k| (k, 2)).collect();
    rep.qpow(&terms, -2)
}

/// `G_i^{(+)}`.
pub fn g_plus<F: Field>(rep: &Rep<F>, i: usize) -> Matrix<F> {
    let d = qmq(rep);
    let tail = chain_sum(rep, i, i, 1..i, Some((1, i, 1, -1)));
    &rep.qpow(&[(i, 2)], 0) + &tail.scale(&(d.clone() * &d))
}

/// `G_i^{(-)}`, including its `q^{2(c-1)}` prefactor.
pub fn g_minus<F: Field>(rep: &Rep<F>, i: usize) -> Matrix<F> {
    let d = qmq(rep);
    let tail = chain_sum(rep, i, i, (i + 1)..=rep.rank(), Some((-1, i, -1, 1)));
    let inner = &rep.qpow(&[(i, -2)], 0) + &tail.scale(&(d.clone() * &d));
    &central_shift(rep) * &inner
}

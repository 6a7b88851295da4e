use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::glrep::Rep;
use crate::report::{Recorder, Report};
use crate::scalars::{comm, qcomm, Field, Matrix};

use super::gradation::Gradation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Ev,
    EvBar,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Ev => "ev",
            Variant::EvBar => "evbar",
        })
    }
}

/// Images of the Chevalley generators of the affine algebra under one
/// evaluation map at spectral value `x`.
#[derive(Debug, Clone)]
pub struct AffineGenSet<F> {
    pub variant: Variant,
    pub x: F,
    n: usize,
    q: F,
    q_inv: F,
    e: Vec<Matrix<F>>,
    f: Vec<Matrix<F>>,
    k: Vec<Matrix<F>>,
    qh: Vec<Matrix<F>>,
    qh_inv: Vec<Matrix<F>>,
    qk_single: Vec<Matrix<F>>,
    mask: Option<Vec<bool>>,
}

/// Cyclic successor in `1..=N`.
pub fn next(i: usize, n: usize) -> usize {
    if i == n {
        1
    } else {
        i + 1
    }
}

impl<F: Field> AffineGenSet<F> {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k[0].rows()
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn q_inv(&self) -> &F {
        &self.q_inv
    }

    pub fn e(&self, i: usize) -> &Matrix<F> {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &Matrix<F> {
        &self.f[i - 1]
    }

    pub fn k(&self, i: usize) -> &Matrix<F> {
        &self.k[i - 1]
    }

    /// `q^{h_i}` with `h_i = k_i - k_{i+1}` (cyclically).
    pub fn qh(&self, i: usize) -> &Matrix<F> {
        &self.qh[i - 1]
    }

    pub fn qh_inv(&self, i: usize) -> &Matrix<F> {
        &self.qh_inv[i - 1]
    }

    /// `q^{sum_l c_l k_l + shift}` as a diagonal matrix.
    pub fn qk(&self, terms: &[(usize, i64)], shift: i64) -> Matrix<F> {
        let mut vals = vec![self.q.powi(shift).expect("q nonzero"); self.dim()];
        for &(l, c) in terms {
            let base = &self.qk_single[l - 1];
            for (v, val) in vals.iter_mut().enumerate() {
                *val = val.clone() * &base.get(v, v).powi(c).expect("q nonzero");
            }
        }
        Matrix::from_diag(vals)
    }

    pub fn mask(&self) -> Option<&[bool]> {
        self.mask.as_deref()
    }

    /// `(q^{h_i} - q^{-h_i}) / (q - q^{-1})`.
    pub fn qbracket_h(&self, i: usize) -> Matrix<F> {
        let den = (self.q.clone() - &self.q_inv).inv().expect("q^2 != 1");
        (self.qh(i) - self.qh_inv(i)).scale(&den)
    }
}

fn monomial<F: Field>(x: &F, e: i64) -> F {
    x.powi(e).expect("x nonzero")
}

/// Images of `e_i, f_i, k_i` under `ev_x` or `evbar_x`.
pub fn evaluate<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    x: &F,
    variant: Variant,
) -> Result<AffineGenSet<F>> {
    let n = rep.rank();
    if grad.rank() != n {
        return Err(AlgebraError::DimensionMismatch {
            left: format!("gradation of rank {}", grad.rank()),
            right: format!("representation of rank {n}"),
        });
    }
    if x.is_zero() {
        return Err(AlgebraError::ZeroParameter("x"));
    }
    let mut e = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    for i in 1..n {
        e.push(rep.gen(i, i + 1).scale(&monomial(x, grad.s_k(i))));
        f.push(rep.gen(i + 1, i).scale(&monomial(x, -grad.s_k(i))));
    }
    let sn = grad.s_k(n);
    let (en, fnn) = match variant {
        Variant::Ev => (
            &(&rep.qpow(&[(1, -1)], 0) * rep.gen(n, 1)) * &rep.qpow(&[(n, -1)], 0),
            &(&rep.qpow(&[(n, 1)], 0) * rep.gen(1, n)) * &rep.qpow(&[(1, 1)], 0),
        ),
        Variant::EvBar => (
            &(&rep.qpow(&[(1, 1)], 0) * rep.genbar(n, 1)) * &rep.qpow(&[(n, 1)], 0),
            &(&rep.qpow(&[(n, -1)], 0) * rep.genbar(1, n)) * &rep.qpow(&[(1, -1)], 0),
        ),
    };
    e.push(en.scale(&monomial(x, sn)));
    f.push(fnn.scale(&monomial(x, -sn)));
    let k = (1..=n).map(|i| rep.gen(i, i).clone()).collect();
    let qh = (1..=n)
        .map(|i| rep.qpow(&[(i, 1), (next(i, n), -1)], 0))
        .collect();
    let qh_inv = (1..=n)
        .map(|i| rep.qpow(&[(i, -1), (next(i, n), 1)], 0))
        .collect();
    let qk_single = (1..=n).map(|i| rep.qpow(&[(i, 1)], 0)).collect();
    Ok(AffineGenSet {
        variant,
        x: x.clone(),
        n,
        q: rep.q().clone(),
        q_inv: rep.q_inv().clone(),
        e,
        f,
        k,
        qh,
        qh_inv,
        qk_single,
        mask: rep.interior().map(<[bool]>::to_vec),
    })
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Cyclic distance between two node labels of the affine diagram.
fn cyclic_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// Verify the defining relations of the affine algebra on evaluated
/// generators, with indices taken modulo `N`.
pub fn check_affine_serre<F: Field>(gens: &AffineGenSet<F>) -> Report {
    let n = gens.rank();
    let mut rec = Recorder::new("affine-serre")
        .param("N", n)
        .param("map", gens.variant)
        .with_mask(gens.mask.clone());
    let zero = Matrix::square_zeros(gens.dim());
    let (q, qi) = (gens.q(), gens.q_inv());
    for i in 1..=n {
        for j in 1..=n {
            let w = format!("i={i},j={j}");
            rec.zero("k-k", &w, &comm(gens.k(i), gens.k(j)));
            let c = F::from_int(delta(i, j) - delta(i, next(j, n)));
            rec.compare("k-e", &w, &comm(gens.k(i), gens.e(j)), &gens.e(j).scale(&c));
            rec.compare("k-f", &w, &comm(gens.k(i), gens.f(j)), &gens.f(j).scale(&-c));
            let rhs = if i == j { gens.qbracket_h(i) } else { zero.clone() };
            rec.compare("e-f", &w, &comm(gens.e(i), gens.f(j)), &rhs);
            if i == j {
                continue;
            }
            let dist = cyclic_distance(i, j, n);
            if n == 2 {
                let q2 = q.clone() * q;
                let qi2 = qi.clone() * qi;
                for (tag, a, b, inner, outer) in [
                    ("quartic-e", gens.e(i), gens.e(j), &q2, &qi2),
                    ("quartic-f", gens.f(i), gens.f(j), &qi2, &q2),
                ] {
                    let t = qcomm(a, b, inner).expect("shape");
                    let t = comm(a, &t);
                    let t = qcomm(a, &t, outer).expect("shape");
                    rec.zero(tag, &w, &t);
                }
            } else if dist >= 2 {
                rec.zero("commuting-e", &w, &comm(gens.e(i), gens.e(j)));
                rec.zero("commuting-f", &w, &comm(gens.f(i), gens.f(j)));
            } else {
                let t = qcomm(gens.e(i), gens.e(j), q).expect("shape");
                rec.zero("serre-e", &w, &qcomm(gens.e(i), &t, qi).expect("shape"));
                let t = qcomm(gens.f(i), gens.f(j), qi).expect("shape");
                rec.zero("serre-f", &w, &qcomm(gens.f(i), &t, q).expect("shape"));
            }
        }
    }
    let total = (1..=n).fold(zero.clone(), |acc, i| &acc + gens.k(i));
    let c = total.get(0, 0).clone();
    rec.compare("level-zero", "", &total, &Matrix::identity(gens.dim()).scale(&c));
    rec.finish()
}

/// Compare the two evaluation maps on the affine node `N`:
/// `ev_x(e_N) = q^{-2(c-1)} evbar_x(e_N)`, `ev_x(f_N) = q^{2(c-1)} evbar_x(f_N)`.
pub fn check_ev_evbar<F: Field>(rep: &Rep<F>, grad: &Gradation, x: &F) -> Report {
    let mut rec = Recorder::new("ev-evbar")
        .param("N", rep.rank())
        .param("D", rep.dim())
        .param("grad", grad)
        .with_mask(rep.interior().map(<[bool]>::to_vec));
    let pair = evaluate(rep, grad, x, Variant::Ev)
        .and_then(|ev| Ok((ev, evaluate(rep, grad, x, Variant::EvBar)?)));
    let (ev, evb) = match pair {
        Ok(p) => p,
        Err(err) => {
            rec.error("evaluate", "", &err);
            return rec.finish();
        }
    };
    let n = rep.rank();
    let shift = crate::glrep::central_shift(rep);
    let unshift = Matrix::from_diag(
        shift
            .diagonal()
            .into_iter()
            .map(|v| v.inv().expect("nonzero"))
            .collect(),
    );
    rec.compare("e_N", "", ev.e(n), &(&unshift * evb.e(n)));
    rec.compare("f_N", "", ev.f(n), &(&shift * evb.f(n)));
    rec.finish()
}

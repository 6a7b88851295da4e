use crate::report::{Recorder, Report};
use crate::scalars::{comm, qcomm, Field, Matrix};

use super::rep::{root_via, Rep};

/// Generators seen either directly or through the substitution
/// `e -> ebar, q -> q^{-1}` under which every relation maps to its barred
/// counterpart.
#[derive(Clone, Copy)]
pub(crate) struct View<'a, F> {
    pub rep: &'a Rep<F>,
    pub bar: bool,
}

impl<'a, F: Field> View<'a, F> {
    pub fn new(rep: &'a Rep<F>, bar: bool) -> Self {
        View { rep, bar }
    }

    pub fn e(&self, i: usize, j: usize) -> &'a Matrix<F> {
        if self.bar {
            self.rep.genbar(i, j)
        } else {
            self.rep.gen(i, j)
        }
    }

    pub fn q(&self) -> &'a F {
        if self.bar {
            self.rep.q_inv()
        } else {
            self.rep.q()
        }
    }

    pub fn q_inv(&self) -> &'a F {
        if self.bar {
            self.rep.q()
        } else {
            self.rep.q_inv()
        }
    }

    /// `q - q^{-1}` in the view's deformation parameter.
    pub fn qmq(&self) -> F {
        self.q().clone() - self.q_inv()
    }

    pub fn qp(&self, terms: &[(usize, i64)], shift: i64) -> Matrix<F> {
        if self.bar {
            let neg: Vec<(usize, i64)> = terms.iter().map(|&(k, c)| (k, -c)).collect();
            self.rep.qpow(&neg, -shift)
        } else {
            self.rep.qpow(terms, shift)
        }
    }

    pub fn qbracket(&self, terms: &[(usize, i64)]) -> Matrix<F> {
        // (q^H - q^{-H}) / (q - q^{-1}) is invariant under q -> q^{-1}.
        self.rep.qbracket(terms)
    }

    pub fn qc(&self, a: &Matrix<F>, b: &Matrix<F>, alpha: &F) -> Matrix<F> {
        qcomm(a, b, alpha).expect("generator shapes agree")
    }

    pub fn label(&self) -> &'static str {
        if self.bar {
            "bar"
        } else {
            "plain"
        }
    }
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Weight of one basis vector shifted by `eps_i - eps_j`.
fn shifted(w: &[i64], i: usize, j: usize) -> Vec<i64> {
    let mut out = w.to_vec();
    out[i - 1] += 1;
    out[j - 1] -= 1;
    out
}

/// Verify the defining relations of `U_q(gl(N))` on the simple-root
/// generators together with the structural invariants of the
/// representation (central element, weight grading, bar-symmetry of the
/// simple generators).
pub fn check_gl_relations<F: Field>(rep: &Rep<F>) -> Report {
    let n = rep.rank();
    let mut rec = Recorder::new("gl-relations")
        .param("N", n)
        .param("D", rep.dim())
        .with_mask(rep.interior().map(<[bool]>::to_vec));
    let id = rep.identity();

    for i in 1..=n {
        for j in 1..=n {
            let w = format!("i={i},j={j}");
            rec.zero("cartan-cartan", &w, &comm(rep.gen(i, i), rep.gen(j, j)));
        }
    }
    for i in 1..=n {
        for j in 1..n {
            let w = format!("i={i},j={j}");
            let c = delta(i, j) - delta(i, j + 1);
            let up = comm(rep.gen(i, i), rep.gen(j, j + 1));
            rec.compare("cartan-raise", &w, &up, &rep.gen(j, j + 1).scale(&F::from_int(c)));
            let down = comm(rep.gen(i, i), rep.gen(j + 1, j));
            rec.compare("cartan-lower", &w, &down, &rep.gen(j + 1, j).scale(&F::from_int(-c)));
        }
    }
    for i in 1..n {
        for j in 1..n {
            let w = format!("i={i},j={j}");
            let lhs = comm(rep.gen(i, i + 1), rep.gen(j + 1, j));
            let rhs = if i == j {
                rep.qbracket(&[(i, 1), (i + 1, -1)])
            } else {
                Matrix::square_zeros(rep.dim())
            };
            rec.compare("raise-lower", &w, &lhs, &rhs);
        }
    }
    let q = rep.q();
    let qi = rep.q_inv();
    for i in 1..n {
        for j in 1..n {
            let w = format!("i={i},j={j}");
            if i.abs_diff(j) >= 2 {
                rec.zero("commuting-raise", &w, &comm(rep.gen(i, i + 1), rep.gen(j, j + 1)));
                rec.zero("commuting-lower", &w, &comm(rep.gen(i + 1, i), rep.gen(j + 1, j)));
            } else if i.abs_diff(j) == 1 {
                let (a, b) = (rep.gen(i, i + 1), rep.gen(j, j + 1));
                let inner = qcomm(a, b, q).expect("shape");
                rec.zero("serre-raise", &w, &qcomm(a, &inner, qi).expect("shape"));
                let (a, b) = (rep.gen(i + 1, i), rep.gen(j + 1, j));
                let inner = qcomm(a, b, qi).expect("shape");
                rec.zero("serre-lower", &w, &qcomm(a, &inner, q).expect("shape"));
            }
        }
    }

    let total = (1..=n).fold(Matrix::square_zeros(rep.dim()), |acc, i| &acc + rep.gen(i, i));
    rec.compare("central", "", &total, &id.scale(rep.central()));

    for i in 1..=n {
        for j in 1..=n {
            let w = format!("i={i},j={j}");
            for (tag, m) in [("weight-grading", rep.gen(i, j)), ("weight-grading-bar", rep.genbar(i, j))] {
                let mut ok = true;
                for r in 0..rep.dim() {
                    for c in 0..rep.dim() {
                        if !m.get(r, c).is_zero() && rep.weight(r) != shifted(rep.weight(c), i, j).as_slice() {
                            ok = false;
                        }
                    }
                }
                rec.condition(tag, &w, ok, "");
            }
            if i.abs_diff(j) <= 1 {
                rec.compare("bar-simple", &w, rep.gen(i, j), rep.genbar(i, j));
            }
        }
    }
    rec.finish()
}

/// Verify every root-vector relation on all admissible index
/// tuples, for both the plain and barred generators, followed by the mixed
/// plain/barred identities.
pub fn check_root_relations<F: Field>(rep: &Rep<F>) -> Report {
    let n = rep.rank();
    let mut rec = Recorder::new("root-relations")
        .param("N", n)
        .param("D", rep.dim())
        .with_mask(rep.interior().map(<[bool]>::to_vec));
    for bar in [false, true] {
        root_block(&mut rec, View::new(rep, bar));
    }
    mixed_relations(&mut rec, rep);
    rec.finish()
}

fn root_block<F: Field>(rec: &mut Recorder, v: View<'_, F>) {
    let n = v.rep.rank();
    let dim = v.rep.dim();
    let lab = v.label();
    let tag = |t: &str| format!("{t}/{lab}");
    let range = || 1..=n;

    // Recursive definition of root vectors via any intermediate index.
    for a in range() {
        for b in range() {
            for c in range() {
                let w = format!("a={a},b={b},c={c}");
                if a > c && c > b {
                    let rhs = v.qc(v.e(a, c), v.e(c, b), v.q());
                    rec.compare(&tag("recursion-desc"), &w, v.e(a, b), &rhs);
                } else if a < c && c < b {
                    let rhs = v.qc(v.e(a, c), v.e(c, b), v.q_inv());
                    rec.compare(&tag("recursion-asc"), &w, v.e(a, b), &rhs);
                }
            }
        }
    }
    for a in range() {
        for b in (a + 1)..=n {
            let w = format!("a={a},b={b}");
            let lhs = comm(v.e(a, b), v.e(b, a));
            rec.compare(&tag("root-pair"), &w, &lhs, &v.qbracket(&[(a, 1), (b, -1)]));
        }
    }

    let qmq = v.qmq();
    let zero = Matrix::square_zeros(dim);
    for a in range() {
        for b in range() {
            for c in range() {
                for d in range() {
                    let w = format!("a={a},b={b},c={c},d={d}");
                    let lhs = || comm(v.e(d, c), v.e(b, a));
                    let prod = || v.e(d, a) * v.e(b, c);
                    if (b < d && d < a && a < c) || (a < c && c < b && b < d) {
                        rec.compare(&tag("dcba-product"), &w, &lhs(), &prod().scale(&-qmq.clone()));
                    }
                    let vanish = (d < c && c < b && b < a)
                        || (d > c && c > b && b > a)
                        || (d < b && b < a && a < c)
                        || (d > b && b > a && a > c)
                        || (d < c && c <= a && a < b)
                        || (c < d && d <= b && b < a)
                        || (d < a && a < b && b < c)
                        || (c < b && b < a && a < d);
                    if vanish {
                        rec.compare(&tag("dcba-vanish"), &w, &lhs(), &zero);
                    }
                    if d < a && a < c && c < b {
                        let rhs = (&v.qp(&[(a, 1), (c, -1)], 0) * &prod()).scale(&-qmq.clone());
                        rec.compare(&tag("dcba-left-weight"), &w, &lhs(), &rhs);
                    }
                    if a < d && d < b && b < c {
                        let rhs = (&prod() * &v.qp(&[(b, 1), (d, -1)], 0)).scale(&qmq);
                        rec.compare(&tag("dcba-right-weight"), &w, &lhs(), &rhs);
                    }
                }
            }
        }
    }

    for a in range() {
        for b in range() {
            for c in range() {
                let w = format!("a={a},b={b},c={c}");
                if a < b && b < c {
                    let lhs = comm(v.e(b, a), v.e(a, c));
                    let rhs = v.e(b, c) * &v.qp(&[(b, 1), (a, -1)], 0);
                    rec.compare(&tag("chain-right"), &w, &lhs, &rhs);
                }
                if a < c && c < b {
                    let lhs = comm(v.e(b, a), v.e(a, c));
                    let rhs = &v.qp(&[(a, 1), (c, -1)], 0) * v.e(b, c);
                    rec.compare(&tag("chain-left"), &w, &lhs, &rhs);
                }
            }
        }
    }
    for a in range() {
        for b in range() {
            for d in range() {
                let w = format!("a={a},b={b},d={d}");
                if a < d && d < b {
                    let lhs = comm(v.e(d, b), v.e(b, a));
                    let rhs = v.e(d, a) * &v.qp(&[(b, 1), (d, -1)], 0);
                    rec.compare(&tag("link-right"), &w, &lhs, &rhs);
                }
                if d < a && a < b {
                    let lhs = comm(v.e(d, b), v.e(b, a));
                    let rhs = &v.qp(&[(a, 1), (b, -1)], 0) * v.e(d, a);
                    rec.compare(&tag("link-left"), &w, &lhs, &rhs);
                }
                if (a < b && b < d) || (b < d && d < a) {
                    let lhs = v.qc(v.e(d, a), v.e(b, a), v.q_inv());
                    rec.compare(&tag("shared-column"), &w, &lhs, &zero);
                }
            }
        }
    }
    for a in range() {
        for b in range() {
            for c in range() {
                let w = format!("a={a},b={b},c={c}");
                if (c < a && a < b) || (b < c && c < a) {
                    let lhs = v.qc(v.e(b, c), v.e(b, a), v.q());
                    rec.compare(&tag("shared-row"), &w, &lhs, &zero);
                }
            }
        }
    }
}

/// `sum_{k in ks} e_ki ebar_jk (weight)`, where the weight factor is
/// produced by `weight(k)` and multiplies on the right.
fn weighted_sum<F: Field>(
    rep: &Rep<F>,
    i: usize,
    j: usize,
    ks: impl Iterator<Item = usize>,
    weight: impl Fn(usize) -> Option<Matrix<F>>,
) -> Matrix<F> {
    let mut acc = Matrix::square_zeros(rep.dim());
    for k in ks {
        let term = rep.gen(k, i) * rep.genbar(j, k);
        let term = match weight(k) {
            Some(wm) => &term * &wm,
            None => term,
        };
        acc = &acc + &term;
    }
    acc
}

fn mixed_relations<F: Field>(rec: &mut Recorder, rep: &Rep<F>) {
    let n = rep.rank();
    let q = rep.q();
    let qi = rep.q_inv();
    let qmq = q.clone() - qi;
    let q2 = q.clone() * q;
    let qi2 = qi.clone() * qi;
    let br = |j: usize, l: usize, i: usize, alpha: &F| -> Matrix<F> {
        qcomm(rep.genbar(j, l), rep.gen(l, i), alpha).expect("shape")
    };

    for j in 1..=n {
        for i in (j + 1)..=n {
            for l in j..i {
                let w = format!("j={j},l={l},i={i}");
                let first = rep.gen(j, i) - &weighted_sum(rep, i, j, (j + 1)..=l, |_| None).scale(&qmq);
                let second = rep.genbar(j, i) + &weighted_sum(rep, i, j, (l + 1)..i, |_| None).scale(&qmq);
                rec.compare("split-sides", &w, &first, &second);
                let rhs = if l == i - 1 {
                    rep.genbar(j, i).clone()
                } else {
                    br(j, l + 1, i, qi)
                };
                rec.compare("split", &w, &first, &rhs);
                if l == j {
                    rec.compare("split-diagonal", &w, &first, rep.gen(j, i));
                }
            }
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for l in i..j {
                let w = format!("i={i},l={l},j={j}");
                let first = rep.genbar(j, i) - &weighted_sum(rep, i, j, (i + 1)..=l, |_| None).scale(&qmq);
                let second = rep.gen(j, i) + &weighted_sum(rep, i, j, (l + 1)..j, |_| None).scale(&qmq);
                rec.compare("split-bar-sides", &w, &first, &second);
                let rhs = if l == j - 1 {
                    rep.gen(j, i).clone()
                } else {
                    br(j, l + 1, i, qi)
                };
                rec.compare("split-bar", &w, &first, &rhs);
                if l == i {
                    rec.compare("split-bar-diagonal", &w, &first, rep.genbar(j, i));
                }
            }
        }
    }

    for l in 1..=n {
        for j in (l + 1)..=n {
            for i in (j + 1)..=n {
                let w = format!("l={l},j={j},i={i}");
                let sum = weighted_sum(rep, i, j, l..j, |k| Some(rep.qpow(&[(k, 1), (j, -1)], -1)));
                let lhs = rep.gen(j, i) + &sum.scale(&qmq);
                let rhs = &br(j, l, i, &qi2) * &rep.qpow(&[(l, 1), (j, -1)], 0);
                rec.compare("weighted-below", &w, &lhs, &rhs);
            }
        }
    }
    for l in 1..=n {
        for i in (l + 1)..=n {
            for j in (i + 1)..=n {
                let w = format!("l={l},i={i},j={j}");
                let sum = weighted_sum(rep, i, j, l..i, |k| Some(rep.qpow(&[(k, 1), (i, -1)], 0)));
                let lhs = rep.genbar(j, i) + &sum.scale(&qmq);
                let rhs = &br(j, l, i, &qi2) * &rep.qpow(&[(l, 1), (i, -1)], 1);
                rec.compare("weighted-below-bar", &w, &lhs, &rhs);
            }
        }
    }
    for j in 1..=n {
        for i in (j + 1)..=n {
            for l in (i + 1)..=n {
                let w = format!("j={j},i={i},l={l}");
                let sum = weighted_sum(rep, i, j, (i + 1)..=l, |k| Some(rep.qpow(&[(i, 1), (k, -1)], 0)));
                let lhs = rep.genbar(j, i) - &sum.scale(&qmq);
                let rhs = &br(j, l, i, &q2) * &rep.qpow(&[(i, 1), (l, -1)], -1);
                rec.compare("weighted-above", &w, &lhs, &rhs);
            }
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for l in (j + 1)..=n {
                let w = format!("i={i},j={j},l={l}");
                let sum = weighted_sum(rep, i, j, (j + 1)..=l, |k| Some(rep.qpow(&[(j, 1), (k, -1)], 1)));
                let lhs = rep.gen(j, i) - &sum.scale(&qmq);
                let rhs = &br(j, l, i, &q2) * &rep.qpow(&[(j, 1), (l, -1)], 0);
                rec.compare("weighted-above-bar", &w, &lhs, &rhs);
            }
        }
    }

    let one = F::one();
    for i in 1..=n {
        for j in 1..=n {
            for l in 1..=n {
                let w = format!("i={i},j={j},l={l}");
                if l < n && ((i < j && j < l) || (j < i && i < l)) {
                    let rhs = &br(j, l + 1, i, &one) * &rep.qpow(&[(l, 1), (l + 1, -1)], 0);
                    rec.compare("bracket-step-up", &w, &br(j, l, i, &q2), &rhs);
                }
                if l > 1 && ((l < i && i < j) || (l < j && j < i)) {
                    let rhs = &br(j, l - 1, i, &one) * &rep.qpow(&[(l - 1, 1), (l, -1)], 0);
                    rec.compare("bracket-step-down", &w, &br(j, l, i, &qi2), &rhs);
                }
                if l >= 2 && ((i + 1 < l && l < j) || (j + 1 < l && l < i)) {
                    rec.compare("bracket-shift", &w, &br(j, l - 1, i, q), &br(j, l, i, qi));
                }
            }
        }
    }
}

/// Compare stored root vectors against the recursion through every
/// admissible intermediate index.
pub fn check_recursion_independence<F: Field>(rep: &Rep<F>) -> Report {
    let n = rep.rank();
    let mut rec = Recorder::new("recursion-independence")
        .param("N", n)
        .with_mask(rep.interior().map(<[bool]>::to_vec));
    for i in 1..=n {
        for j in 1..=n {
            let (lo, hi) = (i.min(j), i.max(j));
            for k in (lo + 1)..hi {
                let w = format!("i={i},j={j},k={k}");
                rec.compare("plain", &w, rep.gen(i, j), &root_via(rep, i, j, k, false));
                rec.compare("bar", &w, rep.genbar(i, j), &root_via(rep, i, j, k, true));
            }
        }
    }
    rec.finish()
}

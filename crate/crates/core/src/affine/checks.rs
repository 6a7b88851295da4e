use crate::block::BlockOp;
use crate::error::Result;
use crate::glrep::{a_op, c_op, central_shift, fundamental_rep, g_minus, g_plus, Rep};
use crate::report::{Expectation, Recorder, Report};
use crate::scalars::{Field, Matrix};

use super::evaluation::{evaluate, AffineGenSet, Variant};
use super::gradation::Gradation;
use super::lop::{build_l, build_lbar, build_r, build_rbar, l_operator, lbar_operator};

/// A labelled pair of sides of one identity.
type Sides<L, T> = (L, T, T);

fn rep_recorder<F: Field>(check: &str, rep: &Rep<F>, grad: &Gradation) -> Recorder {
    Recorder::new(check)
        .param("N", rep.rank())
        .param("D", rep.dim())
        .param("grad", grad)
        .with_mask(rep.interior().map(<[bool]>::to_vec))
}

/// Which intertwining relation to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// `Delta'(a) L = L Delta(a)` with `ev_x`.
    L,
    /// `Delta(a) Lbar = Lbar Delta'(a)` with `evbar_x`.
    LBar,
}

/// Images of `Delta(a)` and `Delta'(a)` on `V (x) C^N` for one Chevalley
/// generator `a`.
struct Coproducts<F> {
    label: String,
    delta: BlockOp<F>,
    delta_op: BlockOp<F>,
}

fn coproducts<F: Field>(v: &AffineGenSet<F>, w: &AffineGenSet<F>) -> Vec<Coproducts<F>> {
    let n = v.rank();
    let (idv, idw) = (Matrix::identity(v.dim()), Matrix::identity(w.dim()));
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(Coproducts {
            label: format!("e_{i}"),
            delta: &BlockOp::kron(v.e(i), &idw) + &BlockOp::kron(v.qh_inv(i), w.e(i)),
            delta_op: &BlockOp::kron(&idv, w.e(i)) + &BlockOp::kron(v.e(i), w.qh_inv(i)),
        });
        out.push(Coproducts {
            label: format!("f_{i}"),
            delta: &BlockOp::kron(v.f(i), w.qh(i)) + &BlockOp::kron(&idv, w.f(i)),
            delta_op: &BlockOp::kron(v.qh(i), w.f(i)) + &BlockOp::kron(v.f(i), &idw),
        });
        let k = &BlockOp::kron(v.k(i), &idw) + &BlockOp::kron(&idv, w.k(i));
        out.push(Coproducts {
            label: format!("k_{i}"),
            delta: k.clone(),
            delta_op: k,
        });
        let gl = BlockOp::kron(v.qh(i), w.qh(i));
        out.push(Coproducts {
            label: format!("q^h_{i}"),
            delta: gl.clone(),
            delta_op: gl,
        });
    }
    out
}

/// Verify that `L(x/y)` (or `Lbar(x/y)`) intertwines the coproduct and the
/// opposite coproduct of every Chevalley generator evaluated on `V (x) C^N`.
pub fn check_l_intertwining<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    x: &F,
    y: &F,
    which: Which,
) -> Report {
    let tag = match which {
        Which::L => "L",
        Which::LBar => "Lbar",
    };
    let mut rec = rep_recorder("L-intertwining", rep, grad).param("operator", tag);
    let run = || -> Result<Vec<Sides<String, BlockOp<F>>>> {
        let fund = fundamental_rep(rep.rank(), rep.q().clone())?;
        let variant = match which {
            Which::L => Variant::Ev,
            Which::LBar => Variant::EvBar,
        };
        let v = evaluate(rep, grad, x, variant)?;
        let w = evaluate(&fund, grad, y, Variant::Ev)?;
        let ratio = x.clone() * &y.inv()?;
        let l = match which {
            Which::L => build_l(rep, grad, &ratio)?,
            Which::LBar => build_lbar(rep, grad, &ratio)?,
        };
        Ok(coproducts(&v, &w)
            .into_iter()
            .map(|c| {
                let (lhs, rhs) = match which {
                    Which::L => (&c.delta_op * &l, &l * &c.delta),
                    Which::LBar => (&c.delta * &l, &l * &c.delta_op),
                };
                (c.label, lhs, rhs)
            })
            .collect())
    };
    match run() {
        Ok(items) => {
            for (label, lhs, rhs) in items {
                rec.compare("intertwine", &label, &lhs, &rhs);
            }
        }
        Err(err) => rec.error("build", "", &err),
    }
    rec.finish()
}

/// Generators of the index-reversed, barred partner of a representation:
/// `e'_ij = ebar_{N+1-i,N+1-j}`, `ebar'_ij = e_{N+1-i,N+1-j}`.
fn reversed_bar<F: Field>(rep: &Rep<F>) -> ReversedRep<'_, F> {
    ReversedRep { rep }
}

struct ReversedRep<'a, F> {
    rep: &'a Rep<F>,
}

impl<'a, F: Field> ReversedRep<'a, F> {
    fn r(&self, i: usize) -> usize {
        self.rep.rank() + 1 - i
    }
    fn gen(&self, i: usize, j: usize) -> &'a Matrix<F> {
        self.rep.genbar(self.r(i), self.r(j))
    }
    fn qpow(&self, k: usize, c: i64) -> Matrix<F> {
        self.rep.qpow(&[(self.r(k), c)], 0)
    }
}

/// Verify that applying the index-reversal automorphism (generators, matrix
/// units and gradation) to `L(x)` yields `Lbar(x)`.
pub fn check_trans_lb<F: Field>(rep: &Rep<F>, grad: &Gradation, x: &F) -> Report {
    let mut rec = rep_recorder("lbar-transform", rep, grad);
    let n = rep.rank();
    let rg = grad.reversed();
    let rev = reversed_bar(rep);
    let d = rep.q().clone() - rep.q_inv();
    let s = rg.total();
    let xp = |p: i64| x.powi(p).expect("x nonzero");
    let target = match build_lbar(rep, grad, x) {
        Ok(t) => t,
        Err(err) => {
            rec.error("build", "", &err);
            return rec.finish();
        }
    };
    // L built from the transformed generators with the transformed
    // gradation, then relabelled E_kj -> E_{N+1-k,N+1-j}.
    let image = BlockOp::from_blocks(n, rep.dim(), |kk, jj| {
        let (k, j) = (n + 1 - kk, n + 1 - jj);
        let base = -rg.xi(k) + rg.xi(j);
        if k == j {
            &rev.qpow(k, 1).scale(&xp(base)) - &rev.qpow(k, -1).scale(&xp(s + base))
        } else if k > j {
            (rev.gen(j, k) * &rev.qpow(j, 1)).scale(&(d.clone() * &xp(base)))
        } else {
            (&rev.qpow(k, -1) * rev.gen(j, k)).scale(&(d.clone() * &xp(s + base)))
        }
    });
    for k in 1..=n {
        for j in 1..=n {
            let tag = if k == j { "diagonal" } else { "off-diagonal" };
            rec.compare(tag, &format!("k={k},j={j}"), image.block(k, j), target.block(k, j));
        }
    }
    rec.finish()
}

/// `(pi (x) 1) L = R` and `(pi (x) 1) Lbar = Rbar` on the fundamental
/// representation.
pub fn check_r_consistency<F: Field>(n: usize, grad: &Gradation, q: &F, x: &F) -> Report {
    let mut rec = Recorder::new("R-consistency").param("N", n).param("grad", grad);
    let run = || -> Result<[Sides<&'static str, Matrix<F>>; 2]> {
        let fund = fundamental_rep(n, q.clone())?;
        Ok([
            ("R", build_l(&fund, grad, x)?.to_matrix(), build_r(grad, q, x)?),
            ("Rbar", build_lbar(&fund, grad, x)?.to_matrix(), build_rbar(grad, q, x)?),
        ])
    };
    match run() {
        Ok(items) => {
            for (tag, lhs, rhs) in items {
                rec.compare(tag, "", &lhs, &rhs);
            }
        }
        Err(err) => rec.error("build", "", &err),
    }
    rec.finish()
}

/// Block `(k, j)` of `L` and `Lbar` shifts the weight by `eps_j - eps_k`.
pub fn check_weight_zero<F: Field>(rep: &Rep<F>, grad: &Gradation) -> Report {
    let mut rec = rep_recorder("L-weight", rep, grad);
    let ops = match (l_operator(rep, grad), lbar_operator(rep, grad)) {
        (Ok(l), Ok(lb)) => [("L", l), ("Lbar", lb)],
        (Err(err), _) | (_, Err(err)) => {
            rec.error("build", "", &err);
            return rec.finish();
        }
    };
    let n = rep.rank();
    for (tag, op) in &ops {
        for k in 1..=n {
            for j in 1..=n {
                let mut ok = true;
                for (_, m) in op.terms(k, j) {
                    for r in 0..rep.dim() {
                        for c in 0..rep.dim() {
                            if m.get(r, c).is_zero() {
                                continue;
                            }
                            let mut expect = rep.weight(c).to_vec();
                            expect[j - 1] += 1;
                            expect[k - 1] -= 1;
                            ok &= rep.weight(r) == expect.as_slice();
                        }
                    }
                }
                rec.condition(tag, &format!("k={k},j={j}"), ok, "");
            }
        }
    }
    rec.finish()
}

/// `L_grad(t^N) = D (L_principal(t^s)) D^{-1}` with
/// `D = sum_k t^{s xi^p_k - N xi_k} (1 (x) E_kk)`.
pub fn check_gradation_covariance<F: Field>(rep: &Rep<F>, grad: &Gradation, t: &F) -> Report {
    let mut rec = rep_recorder("gradation-covariance", rep, grad);
    let n = rep.rank();
    let principal = Gradation::principal(n);
    let s = grad.total();
    let run = || -> Result<(BlockOp<F>, BlockOp<F>)> {
        let lhs = build_l(rep, grad, &t.powi(n as i64)?)?;
        let lp = build_l(rep, &principal, &t.powi(s)?)?;
        let dexp = |k: usize| s * principal.xi(k) - n as i64 * grad.xi(k);
        let rhs = BlockOp::from_blocks(n, rep.dim(), |k, j| {
            lp.block(k, j).scale(&t.powi(dexp(k) - dexp(j)).expect("t nonzero"))
        });
        Ok((lhs, rhs))
    };
    match run() {
        Ok((lhs, rhs)) => {
            rec.compare("similarity", "", &lhs, &rhs);
        }
        Err(err) => rec.error("build", "", &err),
    }
    rec.finish()
}

/// `R_12(x/y) R_13(x/z) R_23(y/z) = R_23(y/z) R_13(x/z) R_12(x/y)`.
///
/// Asserted at principal gradation; reported as a finding for any other
/// gradation, where the evaluated argument pattern is not fixed a priori.
pub fn check_ybe<F: Field>(grad: &Gradation, q: &F, x: &F, y: &F, z: &F) -> Report {
    let n = grad.rank();
    let expectation = if *grad == Gradation::principal(n) {
        Expectation::Assert
    } else {
        Expectation::Explore
    };
    let mut rec = Recorder::new("yang-baxter")
        .param("N", n)
        .param("grad", grad)
        .with_expectation(expectation);
    let run = || -> Result<(Matrix<F>, Matrix<F>)> {
        let r12 = build_r(grad, q, &(x.clone() * &y.inv()?))?;
        let r13 = build_r(grad, q, &(x.clone() * &z.inv()?))?;
        let r23 = build_r(grad, q, &(y.clone() * &z.inv()?))?;
        let id = Matrix::<F>::identity(n);
        let a12 = r12.kron(&id);
        let a23 = id.kron(&r23);
        let swap = swap23(n);
        let a13 = &(&swap * &r13.kron(&id)) * &swap;
        Ok((&(&a12 * &a13) * &a23, &(&a23 * &a13) * &a12))
    };
    match run() {
        Ok((lhs, rhs)) => {
            rec.compare("ratio-form", "", &lhs, &rhs);
        }
        Err(err) => rec.error("build", "", &err),
    }
    rec.finish()
}

/// Permutation of tensor legs 2 and 3 on `(C^N)^{(x)3}`.
fn swap23<F: Field>(n: usize) -> Matrix<F> {
    let size = n * n * n;
    let mut p = Matrix::square_zeros(size);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                p.set(a * n * n + c * n + b, a * n * n + b * n + c, F::one());
            }
        }
    }
    p
}

/// The product `L(x) Q Lbar(x w^{-1}) Q^{-1}` with
/// `Q = q^{(2(c-1)/s) sum_j xi_j e_jj}` and `w = q^{2(c-1)/s}`.
///
/// `w` must be supplied by the caller: in exact mode it is
/// `q_root^{2(m-1)}` for `q = q_root^s`; in float mode it may be omitted and
/// is computed as a real power of `q`.
pub fn check_llbar_product<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    x: &F,
    q_root: Option<&F>,
) -> Report {
    let mut rec = rep_recorder("LLbar-product", rep, grad);
    let n = rep.rank();
    let s = grad.total();
    let w = match (q_root, rep.central_int()) {
        (Some(root), Some(m)) => {
            let ok = root.powi(s).ok().as_ref() == Some(rep.q());
            if !rec.condition("root-consistency", "", ok, "q must equal q_root^s") {
                return rec.finish();
            }
            root.powi(2 * (m - 1)).expect("root nonzero")
        }
        _ => {
            let m = rep.central().to_complex().re;
            match rep.q().real_power(2.0 * (m - 1.0) / s as f64) {
                Some(w) => w,
                None => {
                    rec.skip("shift", "exact mode requires q_root with q = q_root^s");
                    return rec.finish();
                }
            }
        }
    };
    let run = || -> Result<BlockOp<F>> {
        let l = build_l(rep, grad, x)?;
        let lb = build_lbar(rep, grad, &(x.clone() * &w.inv()?))?;
        // In generic mode lambda_1 omits the non-integer part m; the missing
        // factor w^{xi_1 m} is central and cancels between Q and Q^{-1}.
        let qvals: Vec<F> = rep
            .weights()
            .iter()
            .map(|wt| {
                let e: i64 = (0..n).map(|k| grad.xi(k + 1) * wt[k]).sum();
                w.powi(e).expect("w nonzero")
            })
            .collect();
        let qm = Matrix::from_diag(qvals.clone());
        let qm_inv = Matrix::from_diag(qvals.iter().map(|v| v.inv().expect("nonzero")).collect());
        Ok(&l * &lb.left_leg1(&qm).right_leg1(&qm_inv))
    };
    let product = match run() {
        Ok(p) => p,
        Err(err) => {
            rec.error("build", "", &err);
            return rec.finish();
        }
    };
    let xs = x.powi(s).expect("x nonzero");
    let xsi = xs.inv().expect("x nonzero");
    let id = rep.identity();
    let d = rep.q().clone() - rep.q_inv();
    let shift = central_shift(rep);
    for i in 1..=n {
        for j in 1..=n {
            let wit = format!("i={i},j={j}");
            if i == j {
                // The shifted argument of Lbar multiplies its x^{-s} term by
                // w^s = q^{2(c-1)}; the unshifted form holds only at c = 1.
                let g = &g_plus(rep, i) + &g_minus(rep, i);
                let spectral = &id.scale(&-xs.clone()) - &shift.scale(&xsi);
                rec.compare("diagonal", &wit, product.block(i, i), &(&spectral + &g));
                let displayed = &id.scale(&-(xs.clone() + &xsi)) + &g;
                rec.explore("diagonal-unshifted", &wit, product.block(i, i), &displayed);
                continue;
            }
            let (a, c) = (a_op(rep, j, i), c_op(rep, j, i));
            let expected = if i < j {
                let core = &c - &(&a * &shift);
                (&core * &rep.qpow(&[(j, 1), (i, -1)], 1)).scale(&d)
            } else {
                (&a - &(&c * &shift)).scale(&d)
            };
            rec.compare("off-diagonal", &wit, product.block(i, j), &expected);
            rec.zero("off-diagonal-vanishes", &wit, product.block(i, j));
        }
    }
    if let Some(m) = rep.central_int() {
        let q2m = rep.q().powi(2 * m).expect("q nonzero");
        let qm2 = rep.q_inv().powi(2).expect("q nonzero");
        let scalar = q2m + &qm2;
        for i in 1..=n {
            let g = &g_plus(rep, i) + &g_minus(rep, i);
            rec.compare("G-scalar", &format!("i={i}"), &g, &id.scale(&scalar));
        }
    }
    rec.finish()
}

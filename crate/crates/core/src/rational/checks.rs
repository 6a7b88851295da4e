use crate::affine::{l_operator, lbar_operator, Gradation};
use crate::block::{product, BlockOp};
use crate::error::Result;
use crate::glrep::{oscillator_rep, Rep};
use crate::reflection::{k_matrix, weight_sums, BoundaryParams, LiteralParams, LiteralVariant};
use crate::report::{Recorder, Report, Residual};
use crate::scalars::{Complex64, Field, Matrix, Mode};

use super::ops::{
    classical_rep_in, rational_k_matrix, rational_k_operator, rational_k_operator_limit, rational_kappa_at, rational_l, rational_lbar,
    RationalForm, RationalKappa, RationalParams,
};

const DEGENERATE_NOTE: &str = "gamma factor on a pole: projective limit used";

/// Tolerance for the proportionality of the renormalized K-operator near
/// `q = 1` to its rational limit.
pub const K_LIMIT_TOL: f64 = 1e-4;

/// Distance of `q` from one in the K-operator limit check.
pub const K_LIMIT_STEP: f64 = 1e-4;

/// Tolerance on the renormalized L-operators and K-matrix at the smallest
/// step, in units of the natural scale `1 + (s|u| + |p|)^2` of the
/// first-order term.
pub const L_LIMIT_TOL: f64 = 1e-4;

/// The leading error of the float limits is `O(|q - 1| (s u)^2)`, from
/// expanding `x^s = q^{-2su}`; the final-step error is measured relative
/// to that scale.
fn limit_scale(s: f64, u: f64, p: f64) -> f64 {
    let t = s * u.abs() + p.abs();
    1.0 + t * t
}

/// First-order convergence along the step series, plus the scaled final
/// error.
fn record_series(rec: &mut Recorder, prefix: &str, series: &[f64], scale: f64) {
    let ok = series.windows(2).all(|w| w[1] * CONVERGENCE_FACTOR <= w[0]);
    let note = series.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>().join(",");
    rec.condition(&format!("{prefix}order-one"), "", ok, &note);
    let last = *series.last().unwrap_or(&f64::INFINITY);
    rec.record_residual(&format!("{prefix}final"), "", float_residual(last / scale));
}

fn recorder<F: Field>(check: &str, rep: &Rep<F>, params: &RationalParams<F>) -> Recorder {
    Recorder::new(check)
        .param("N", rep.rank())
        .param("D", rep.dim())
        .param("grad", &params.grad)
        .param("a", params.a)
}

fn delta<F: Field>(a: usize, b: usize) -> F {
    if a == b {
        F::one()
    } else {
        F::zero()
    }
}

/// Verify the `gl(N)` commutation relations
/// `[e_ij, e_kl] = delta_jk e_il - delta_li e_kj` and the value of the
/// central element on a classical realization.
pub fn check_classical_gl<F: Field>(rep: &Rep<F>) -> Report {
    let n = rep.rank();
    let mut rec = Recorder::new("classical-gl").param("N", n).param("D", rep.dim());
    let e = |i: usize, j: usize| rep.gen(i, j);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let w = format!("i={i},j={j},k={k},l={l}");
                    let lhs = &(e(i, j) * e(k, l)) - &(e(k, l) * e(i, j));
                    let rhs = &e(i, l).scale(&delta(j, k)) - &e(k, j).scale(&delta(l, i));
                    rec.compare("commutator", &w, &lhs, &rhs);
                }
            }
        }
    }
    let total = (1..=n).fold(Matrix::square_zeros(rep.dim()), |acc, i| &acc + e(i, i));
    rec.compare("central", "", &total, &rep.identity().scale(rep.central()));
    rec.finish()
}

/// Both sides of `L(v-u) K1(u) Lbar(u+v) K2(v) = K2(v) L(-u-v) K1(u) Lbar(u-v)`.
pub fn rational_reflection_sides<F: Field>(
    rep: &Rep<F>,
    params: &RationalParams<F>,
    u: &F,
    v: &F,
    kappa: &RationalKappa<F>,
) -> (BlockOp<F>, BlockOp<F>) {
    let n = rep.rank();
    let s = params.s();
    let k1 = BlockOp::leg1(&kappa.matrix(), n);
    let k2 = BlockOp::leg2(&rational_k_matrix(n, params, v), rep.dim());
    let lhs = product(&[
        &rational_l(rep, &s, &(v.clone() - u)),
        &k1,
        &rational_lbar(rep, &s, &(u.clone() + v)),
        &k2,
    ]);
    let rhs = product(&[
        &k2,
        &rational_l(rep, &s, &(-(u.clone() + v))),
        &k1,
        &rational_lbar(rep, &s, &(u.clone() - v)),
    ]);
    (lhs, rhs)
}

/// Verify the rational reflection equation for both gamma-ratio forms.
pub fn check_rational_reflection<F: Field>(rep: &Rep<F>, params: &RationalParams<F>, u: &F, v: &F) -> Report {
    let mut rec = recorder("rational-reflection", rep, params);
    for (tag, form) in [("reflection-primary", RationalForm::Primary), ("reflection-secondary", RationalForm::Secondary)] {
        match rational_k_operator_limit(rep, params, u, form) {
            Ok((kappa, degenerate)) => {
                let (lhs, rhs) = rational_reflection_sides(rep, params, u, v, &kappa);
                rec.compare(tag, "", &lhs, &rhs);
                if degenerate {
                    rec.annotate_last(DEGENERATE_NOTE);
                }
            }
            Err(err) => rec.error(tag, "", &err),
        }
    }
    rec.finish()
}

/// Verify the rational reflection equation for an arbitrary diagonal.
pub fn check_rational_reflection_with<F: Field>(
    rep: &Rep<F>,
    params: &RationalParams<F>,
    u: &F,
    v: &F,
    kappa: &RationalKappa<F>,
    label: &str,
) -> Report {
    let mut rec = recorder("rational-reflection", rep, params).param("kappa", label);
    let (lhs, rhs) = rational_reflection_sides(rep, params, u, v, kappa);
    rec.compare("reflection", "", &lhs, &rhs);
    rec.finish()
}

/// Verify the block-commutation and quadratic exchange relations of the
/// rational K-operator, for both forms.
pub fn check_rational_intertwining<F: Field>(rep: &Rep<F>, params: &RationalParams<F>, u: &F) -> Report {
    let mut rec = recorder("rational-intertwining", rep, params);
    let n = rep.rank();
    let a = params.a;
    let su = params.s() * u;
    let e = |i: usize, j: usize| rep.gen(i, j);
    let quad = |i: usize, j: usize, ks: std::ops::RangeInclusive<usize>| {
        ks.fold(Matrix::square_zeros(rep.dim()), |acc, k| &acc + &(e(k, i) * e(j, k)))
    };
    for form in [RationalForm::Primary, RationalForm::Secondary] {
        let label = match form {
            RationalForm::Primary => "primary",
            RationalForm::Secondary => "secondary",
        };
        let (k, degenerate) = match rational_k_operator_limit(rep, params, u, form) {
            Ok((k, degenerate)) => (k.matrix(), degenerate),
            Err(err) => {
                rec.error(label, "", &err);
                continue;
            }
        };
        let plus = su.clone() - &params.p;
        let minus = -su.clone() - &params.p;
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let w = format!("{label}:j={j},i={i}");
                if (i <= a) == (j <= a) {
                    rec.compare("block-commute", &w, &(e(j, i) * &k), &(&k * e(j, i)));
                    continue;
                }
                let upper = &e(j, i).scale(&plus) - &quad(i, j, a + 1..=n);
                let lower = &e(j, i).scale(&minus) + &quad(i, j, 1..=a);
                if i <= a {
                    rec.compare("exchange-upper", &w, &(&upper * &k), &(&k * &lower));
                } else {
                    rec.compare("exchange-lower", &w, &(&lower * &k), &(&k * &upper));
                }
            }
        }
        if degenerate {
            rec.annotate_last(DEGENERATE_NOTE);
        }
    }
    rec.finish()
}

/// The two gamma-ratio forms are proportional, and on the fundamental
/// realization the K-operator is proportional to the K-matrix.
pub fn check_rational_forms<F: Field>(rep: &Rep<F>, params: &RationalParams<F>, u: &F) -> Report {
    let mut rec = recorder("rational-forms", rep, params);
    let run = || -> Result<(RationalKappa<F>, RationalKappa<F>)> {
        Ok((
            rational_k_operator(rep, params, u, RationalForm::Primary)?,
            rational_k_operator(rep, params, u, RationalForm::Secondary)?,
        ))
    };
    match run() {
        Ok((p, s)) => {
            let lhs = Matrix::from_diag(p.values.iter().map(|v| v.clone() * &s.values[0]).collect());
            let rhs = Matrix::from_diag(s.values.iter().map(|v| v.clone() * &p.values[0]).collect());
            rec.compare("forms-proportional", "", &lhs, &rhs);
            if rep.dim() == rep.rank() && rep.central_int() == Some(1) {
                let kmat = rational_k_matrix(rep.rank(), params, u).diagonal();
                let lhs = Matrix::from_diag(p.values.iter().map(|v| v.clone() * &kmat[0]).collect());
                let rhs = Matrix::from_diag(kmat.iter().map(|v| v.clone() * &p.values[0]).collect());
                rec.compare("fundamental-k-matrix", "", &lhs, &rhs);
            }
        }
        Err(err) => rec.error("forms", "", &err),
    }
    rec.finish()
}

/// The sufficient conditions for the rational K-operator, their summed
/// consequence, and the rectangular condition with `alpha = m - 1`.
pub fn check_rational_conditions<F: Field>(rep: &Rep<F>, a: usize) -> Report {
    let n = rep.rank();
    let mut rec = Recorder::new("rational-conditions")
        .param("N", n)
        .param("D", rep.dim())
        .param("a", a);
    let e = |i: usize, j: usize| rep.gen(i, j);
    let dim = rep.dim();
    let id = rep.identity();
    let cartan = |ks: std::ops::RangeInclusive<usize>| ks.fold(Matrix::square_zeros(dim), |acc, k| &acc + e(k, k));
    let quad = |i: usize, j: usize, ks: std::ops::RangeInclusive<usize>| {
        ks.fold(Matrix::square_zeros(dim), |acc, k| &acc + &(e(k, i) * e(j, k)))
    };
    let alpha = rep.central().clone() - F::one();
    let mut any = false;
    for i in 1..=n {
        for j in 1..=n {
            let cross = (i <= a && a < j) || (j <= a && a < i);
            if !cross {
                continue;
            }
            any = true;
            let w = format!("j={j},i={i}");
            let (lo, hi) = (1..=a, a + 1..=n);
            let (plain, shifted) = if i <= a { (hi.clone(), lo.clone()) } else { (lo.clone(), hi.clone()) };
            rec.compare("sufficient-plain", &w, &(e(j, i) * &cartan(plain.clone())), &quad(i, j, plain));
            let lhs = e(j, i) * &(&cartan(shifted.clone()) - &id);
            rec.compare("sufficient-shifted", &w, &lhs, &quad(i, j, shifted));
            let lhs = e(j, i) * &(&cartan(1..=n) - &id);
            rec.compare("sufficient-summed", &w, &lhs, &quad(i, j, 1..=n));
            rec.compare("rectangular", &w, &quad(i, j, 1..=n), &e(j, i).scale(&alpha));
        }
    }
    if !any {
        rec.skip("sufficient", "no cross-block pair for this splitting index");
    }
    // The diagonal pairs of the rectangular condition are not asserted by
    // the theory; record them with beta = m.
    for i in 1..=n {
        let rhs = &e(i, i).scale(&alpha) + &id.scale(rep.central());
        rec.explore("rectangular-diagonal", &format!("i={i}"), &quad(i, i, 1..=n), &rhs);
    }
    rec.finish()
}

/// Float oracle for the renormalized L-operators: along `q = 1 + 10^{-k}`
/// the matrices `(q - 1/q)^{-1} L(q^{-2u})` and the barred analogue approach
/// their rational limits, converging to first order in `|q - 1|`.
pub fn check_l_limit(n: usize, m: i64, grad: &Gradation, u: f64, steps: &[i32]) -> Report {
    let mut rec = Recorder::new("rational-l-limit")
        .param("N", n)
        .param("m", m)
        .param("grad", grad)
        .param("u", u)
        .with_tolerance(L_LIMIT_TOL);
    let s = Complex64::new(grad.total() as f64, 0.0);
    let uc = Complex64::new(u, 0.0);
    let run = || -> Result<Vec<(f64, f64)>> {
        let classical = classical_rep_in::<Complex64>(n, m)?;
        let (target, target_bar) = (rational_l(&classical, &s, &uc), rational_lbar(&classical, &s, &uc));
        steps
            .iter()
            .map(|&k| {
                let q = Complex64::new(1.0 + 10f64.powi(-k), 0.0);
                let rep = oscillator_rep(n, m, q)?;
                let x = q.powf(-2.0 * u);
                let scale = (q - q.inv()).inv();
                let l = l_operator(&rep, grad)?.at(&x)?.scale(&scale);
                let lb = lbar_operator(&rep, grad)?.at(&x)?.scale(&scale);
                Ok((max_diff(&l, &target), max_diff(&lb, &target_bar)))
            })
            .collect()
    };
    match run() {
        Ok(errs) => {
            let scale = limit_scale(grad.total() as f64, u, 0.0);
            for (tag, pick) in [("l-", 0usize), ("lbar-", 1)] {
                let series: Vec<f64> = errs.iter().map(|e| if pick == 0 { e.0 } else { e.1 }).collect();
                record_series(&mut rec, tag, &series, scale);
            }
        }
        Err(err) => rec.error("limit", "", &err),
    }
    rec.finish()
}

/// Float oracle for the K-matrix: `(q - 1/q)^{-1} K(q^{-2u})` with
/// `eps_± = ∓q^{-2 p_±}` approaches the rational K-matrix.
pub fn check_k_matrix_limit(n: usize, grad: &Gradation, p: f64, a: usize, u: f64, steps: &[i32]) -> Report {
    let mut rec = Recorder::new("rational-k-matrix-limit")
        .param("N", n)
        .param("a", a)
        .param("p", p)
        .param("u", u)
        .with_tolerance(L_LIMIT_TOL);
    let run = || -> Result<Vec<f64>> {
        let params = RationalParams::new(Complex64::new(p, 0.0), a, grad.clone())?;
        let target = rational_k_matrix(n, &params, &Complex64::new(u, 0.0));
        steps
            .iter()
            .map(|&k| {
                let q = Complex64::new(1.0 + 10f64.powi(-k), 0.0);
                let mut bp = boundary_from_p(q, p)?;
                bp.a = a;
                let km = k_matrix(n, grad, &bp, &q.powf(-2.0 * u))?.scale(&(q - q.inv()).inv());
                Ok(matrix_diff(&km, &target))
            })
            .collect()
    };
    match run() {
        Ok(series) => record_series(&mut rec, "", &series, limit_scale(grad.total() as f64, u, p)),
        Err(err) => rec.error("limit", "", &err),
    }
    rec.finish()
}

/// `eps_+ = -q^{-2p}`, `eps_- = 1`, i.e. `p_+ = p`, `p_- = 0`.
fn boundary_from_p(q: Complex64, p: f64) -> Result<BoundaryParams<Complex64>> {
    BoundaryParams::new(0, -q.powf(-2.0 * p), Complex64::new(1.0, 0.0))
}

/// Float oracle for the K-operator: at `q = 1 ± step` each literal
/// infinite-product form, evaluated at `x = q^{-2u}`, is proportional to
/// the gamma-ratio form it degenerates to.
pub fn check_k_operator_limit(n: usize, m: i64, grad: &Gradation, p: f64, a: usize, u: f64, step: f64) -> Report {
    let mut rec = Recorder::new("rational-k-operator-limit")
        .param("N", n)
        .param("m", m)
        .param("a", a)
        .param("p", p)
        .param("u", u)
        .with_tolerance(K_LIMIT_TOL);
    let mut run = || -> Result<()> {
        let classical = classical_rep_in::<Complex64>(n, m)?;
        let s = grad.total();
        let su = Complex64::new(s as f64 * u, 0.0);
        let pc = Complex64::new(p, 0.0);
        let cases = [
            (1.0 + step, LiteralVariant::PlusLarge, RationalForm::Primary),
            (1.0 - step, LiteralVariant::MinusSmall, RationalForm::Primary),
            (1.0 - step, LiteralVariant::PlusSmall, RationalForm::Secondary),
            (1.0 + step, LiteralVariant::MinusLarge, RationalForm::Secondary),
        ];
        for (q_abs, variant, form) in cases {
            let q = Complex64::new(q_abs, 0.0);
            let mut bp = boundary_from_p(q, p)?;
            bp.a = a;
            let lp = LiteralParams {
                m,
                s,
                q,
                x: q.powf(-2.0 * u),
                eps_plus: bp.eps_plus,
                eps_minus: bp.eps_minus,
                terms: 50_000_000,
            };
            let mut ln_ratios = Vec::with_capacity(classical.dim());
            for w in classical.weights() {
                let ws = weight_sums(w, grad, a);
                let exact = rational_kappa_at(ws.s1, ws.s2, &su, &pc, form)?;
                ln_ratios.push(lp.ln_eval(variant, ws) - exact.ln());
            }
            let r0 = ln_ratios[0];
            let spread = ln_ratios.iter().map(|r| ((r - r0).exp() - 1.0).norm()).fold(0.0f64, f64::max);
            rec.record_residual(variant.label(), &format!("|q|={q_abs}"), float_residual(spread));
        }
        Ok(())
    };
    if let Err(err) = run() {
        rec.error("limit", "", &err);
    }
    rec.finish()
}

fn float_residual(value: f64) -> Residual {
    Residual {
        mode: Mode::Float,
        value: if value.is_finite() { value } else { f64::INFINITY },
        exact_zero: value == 0.0,
    }
}

fn matrix_diff(a: &Matrix<Complex64>, b: &Matrix<Complex64>) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max)
}

fn max_diff(a: &BlockOp<Complex64>, b: &BlockOp<Complex64>) -> f64 {
    a.blocks()
        .iter()
        .zip(b.blocks())
        .map(|(x, y)| matrix_diff(x, y))
        .fold(0.0f64, f64::max)
}

/// Largest spread, over the four literal forms, of the ratio between the
/// literal K-operator at `q = 1 ± step` and its gamma-ratio limit.
fn k_limit_spread(n: usize, m: i64, grad: &Gradation, p: f64, a: usize, u: f64, step: f64) -> Result<f64> {
    let report = check_k_operator_limit(n, m, grad, p, a, u, step);
    if let Some(e) = report.failures().find(|e| e.residual == "nan") {
        return Err(crate::error::AlgebraError::InvalidParameter(
            e.note.clone().unwrap_or_else(|| "limit evaluation failed".into()),
        ));
    }
    Ok(report
        .entries
        .iter()
        .filter_map(|e| e.residual.parse::<f64>().ok())
        .fold(0.0f64, f64::max))
}

/// Convergence of the K-operator limit: over `q = 1 ± 10^{-k}`,
/// `k = 2, 3, 4`, the spread must shrink by at least a factor
/// [`CONVERGENCE_FACTOR`] per decade.
pub fn check_k_operator_convergence(n: usize, m: i64, grad: &Gradation, p: f64, a: usize, u: f64) -> Report {
    let mut rec = Recorder::new("rational-k-operator-convergence")
        .param("N", n)
        .param("m", m)
        .param("a", a)
        .param("p", p)
        .param("u", u);
    let series: Result<Vec<f64>> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&step| k_limit_spread(n, m, grad, p, a, u, step))
        .collect();
    match series {
        Ok(series) => {
            let ok = series.windows(2).all(|w| w[1] * CONVERGENCE_FACTOR <= w[0]);
            let note = series.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>().join(",");
            rec.condition("order-one", "", ok, &note);
        }
        Err(err) => rec.error("order-one", "", &err),
    }
    rec.finish()
}

/// Required error reduction per decade of `|q - 1|` (first-order
/// convergence gives about ten).
pub const CONVERGENCE_FACTOR: f64 = 8.0;

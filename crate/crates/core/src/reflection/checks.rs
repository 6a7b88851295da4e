use num_complex::Complex64;
use num_traits::Zero;

use crate::affine::{build_r, build_rbar, l_operator, lbar_operator, Gradation};
use crate::block::{product, BlockOp};
use crate::error::Result;
use crate::glrep::{a_op, b_op, c_op, central_shift, d_op, fundamental_rep, Rep};
use crate::report::{Comparable, Recorder, Report, Residual, FLOAT_TOL};
use crate::scalars::{Field, Matrix, Mode};

use super::kop::{
    k_matrix, k_operator, k_operator_branch, weight_sums, BoundaryParams, KBranch, KDiagonal,
    LiteralParams, LiteralVariant,
};

/// Tolerance for the proportionality of literal K-operator variants.
pub const VARIANT_TOL: f64 = 1e-8;

/// Factors kept in each truncated infinite product of the literal variants.
pub const VARIANT_TERMS: usize = 300;

fn recorder<F: Field>(check: &str, rep: &Rep<F>, grad: &Gradation, bp: &BoundaryParams<F>) -> Recorder {
    Recorder::new(check)
        .param("N", rep.rank())
        .param("D", rep.dim())
        .param("grad", grad)
        .param("a", bp.a)
        .with_mask(rep.interior().map(<[bool]>::to_vec))
}

/// Both sides of the operator reflection equation
/// `L(y/x) K1(x) Lbar(xy) K2(y) = K2(y) L(1/(xy)) K1(x) Lbar(x/y)`.
pub fn reflection_sides<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
    y: &F,
    kappa: &KDiagonal<F>,
) -> Result<(BlockOp<F>, BlockOp<F>)> {
    let n = rep.rank();
    let l = l_operator(rep, grad)?;
    let lb = lbar_operator(rep, grad)?;
    let (xi, yi) = (x.inv()?, y.inv()?);
    let k1 = BlockOp::leg1(&kappa.matrix(), n);
    let k2 = BlockOp::leg2(&k_matrix(n, grad, bp, y)?, rep.dim());
    let lhs = product(&[
        &l.at(&(y.clone() * &xi))?,
        &k1,
        &lb.at(&(x.clone() * y))?,
        &k2,
    ]);
    let rhs = product(&[
        &k2,
        &l.at(&(xi * &yi))?,
        &k1,
        &lb.at(&(x.clone() * &yi))?,
    ]);
    Ok((lhs, rhs))
}

/// Verify the operator reflection equation for the normalized K-operator.
pub fn check_reflection_l<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
    y: &F,
) -> Report {
    let mut rec = recorder("reflection-L", rep, grad, bp);
    match k_operator(rep, grad, bp, x).and_then(|k| reflection_sides(rep, grad, bp, x, y, &k)) {
        Ok((lhs, rhs)) => {
            rec.compare("reflection", "", &lhs, &rhs);
        }
        Err(err) => rec.error("reflection", "", &err),
    }
    rec.finish()
}

/// Verify the reflection equation for an arbitrary diagonal `kappa`
/// (rescaled or perturbed solutions).
pub fn check_reflection_with<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
    y: &F,
    kappa: &KDiagonal<F>,
    label: &str,
) -> Report {
    let mut rec = recorder("reflection-L", rep, grad, bp).param("kappa", label);
    match reflection_sides(rep, grad, bp, x, y, kappa) {
        Ok((lhs, rhs)) => {
            rec.compare("reflection", "", &lhs, &rhs);
        }
        Err(err) => rec.error("reflection", "", &err),
    }
    rec.finish()
}

/// Negative control: a K-operator perturbed at one basis vector must
/// violate the reflection equation. Passes when the violation is detected.
pub fn check_negative_control<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
    y: &F,
    v: usize,
    factor: &F,
) -> Report {
    let mut rec = recorder("negative-control", rep, grad, bp).param("vector", v);
    if rep.dim() == 1 {
        rec.skip(
            "perturbed-kappa-rejected",
            "on a one-dimensional representation a perturbation is a global rescaling",
        );
        return rec.finish();
    }
    let mask = rec.mask().map(<[bool]>::to_vec);
    let run = || -> Result<bool> {
        let kappa = k_operator(rep, grad, bp, x)?.perturbed(v, factor);
        let (lhs, rhs) = reflection_sides(rep, grad, bp, x, y, &kappa)?;
        Ok(!lhs.residual(&rhs, mask.as_deref()).passes(FLOAT_TOL))
    };
    match run() {
        Ok(detected) => {
            rec.condition("perturbed-kappa-rejected", &format!("v={v}"), detected, "");
        }
        Err(err) => rec.error("perturbed-kappa-rejected", "", &err),
    }
    rec.finish()
}

/// Verify the matrix reflection equation with the explicit R-matrices.
pub fn check_reflection_matrix<F: Field>(
    n: usize,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    q: &F,
    x: &F,
    y: &F,
) -> Report {
    let mut rec = Recorder::new("reflection-matrix")
        .param("N", n)
        .param("grad", grad)
        .param("a", bp.a);
    let run = || -> Result<(Matrix<F>, Matrix<F>)> {
        let id = Matrix::identity(n);
        let k1 = k_matrix(n, grad, bp, x)?.kron(&id);
        let k2 = id.kron(&k_matrix(n, grad, bp, y)?);
        let (xi, yi) = (x.inv()?, y.inv()?);
        let lhs = &(&(&build_r(grad, q, &(y.clone() * &xi))? * &k1)
            * &build_rbar(grad, q, &(x.clone() * y))?)
            * &k2;
        let rhs = &(&(&k2 * &build_r(grad, q, &(xi * &yi))?) * &k1)
            * &build_rbar(grad, q, &(x.clone() * &yi))?;
        Ok((lhs, rhs))
    };
    match run() {
        Ok((lhs, rhs)) => {
            rec.compare("reflection", "", &lhs, &rhs);
        }
        Err(err) => rec.error("reflection", "", &err),
    }
    rec.finish()
}

/// On the fundamental representation the K-operator is proportional to
/// the K-matrix.
pub fn check_fundamental_kappa<F: Field>(
    n: usize,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    q: &F,
    x: &F,
) -> Report {
    let mut rec = Recorder::new("fundamental-kappa")
        .param("N", n)
        .param("grad", grad)
        .param("a", bp.a);
    let run = || -> Result<(Vec<F>, Vec<F>)> {
        let fund = fundamental_rep(n, q.clone())?;
        let kappa = k_operator(&fund, grad, bp, x)?;
        Ok((kappa.values, k_matrix(n, grad, bp, x)?.diagonal()))
    };
    match run() {
        Ok((kappa, kmat)) => {
            // kappa_k K_11 = kappa_1 K_kk for every k.
            let lhs = Matrix::from_diag(kappa.iter().map(|v| v.clone() * &kmat[0]).collect());
            let rhs = Matrix::from_diag(kmat.iter().map(|v| v.clone() * &kappa[0]).collect());
            rec.compare("proportional", "", &lhs, &rhs);
        }
        Err(err) => rec.error("proportional", "", &err),
    }
    rec.finish()
}

/// Cross-check of the two normalized branches. With both coefficients
/// nonzero they must be proportional; with one coefficient zero the
/// available branch must collapse to its pure monomial.
pub fn check_kop_branches<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
) -> Report {
    let mut rec = recorder("kop-branches", rep, grad, bp);
    let both = !bp.eps_plus.is_zero() && !bp.eps_minus.is_zero();
    let mut run = || -> Result<()> {
        if both {
            let p = k_operator_branch(rep, grad, bp, x, KBranch::Plus)?;
            let m = k_operator_branch(rep, grad, bp, x, KBranch::Minus)?;
            let lhs = Matrix::from_diag(p.values.iter().map(|v| v.clone() * &m.values[0]).collect());
            let rhs = Matrix::from_diag(m.values.iter().map(|v| v.clone() * &p.values[0]).collect());
            rec.compare("proportional", "", &lhs, &rhs);
        } else {
            let k = k_operator(rep, grad, bp, x)?;
            let s = grad.total();
            let m = rep.central_int().unwrap_or(0);
            let mono: Vec<F> = rep
                .weights()
                .iter()
                .map(|w| {
                    let ws = weight_sums(w, grad, bp.a);
                    match k.branch {
                        KBranch::Plus => rep.q().powi(2 * (m - 1) * ws.s1).expect("q nonzero")
                            * &x.powi(2 * (s * ws.s1 - ws.xi_dot)).expect("x nonzero"),
                        KBranch::Minus => x.powi(-2 * ws.xi_dot).expect("x nonzero"),
                    }
                })
                .collect();
            rec.compare("monomial", "", &k.matrix(), &Matrix::from_diag(mono));
        }
        Ok(())
    };
    if let Err(err) = run() {
        rec.error("branches", "", &err);
    }
    rec.finish()
}

/// Equal weights get equal eigenvalues.
pub fn check_kappa_weight_function<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
) -> Report {
    let mut rec = recorder("kappa-weight-function", rep, grad, bp);
    match k_operator(rep, grad, bp, x) {
        Ok(k) => {
            let mut ok = true;
            for v in 0..rep.dim() {
                for w in 0..v {
                    if rep.weight(v) == rep.weight(w) {
                        ok &= k.values[v] == k.values[w];
                    }
                }
            }
            rec.condition("equal-weights", "", ok, "");
        }
        Err(err) => rec.error("equal-weights", "", &err),
    }
    rec.finish()
}

/// Float-mode check that every literal variant valid in the current `|q|`
/// regime has a basis-independent ratio to the normalized eigenvalues.
pub fn check_kop_variants(
    rep: &Rep<Complex64>,
    grad: &Gradation,
    bp: &BoundaryParams<Complex64>,
    x: &Complex64,
) -> Report {
    let mut rec = recorder("kop-variants", rep, grad, bp).with_tolerance(VARIANT_TOL);
    if bp.eps_plus.is_zero() || bp.eps_minus.is_zero() {
        rec.skip("variants", "literal variants need both eps nonzero");
        return rec.finish();
    }
    let kappa = match k_operator(rep, grad, bp, x) {
        Ok(k) => k,
        Err(err) => {
            rec.error("variants", "", &err);
            return rec.finish();
        }
    };
    let params = LiteralParams {
        m: rep.central_int().unwrap_or(0),
        s: grad.total(),
        q: *rep.q(),
        x: *x,
        eps_plus: bp.eps_plus,
        eps_minus: bp.eps_minus,
        terms: VARIANT_TERMS,
    };
    let q_abs = rep.q().norm();
    for variant in LiteralVariant::ALL {
        if !variant.applies(q_abs) {
            continue;
        }
        let ratios: Vec<Complex64> = rep
            .weights()
            .iter()
            .zip(&kappa.values)
            .map(|(w, k)| params.eval(variant, weight_sums(w, grad, bp.a)) / k)
            .collect();
        let r0 = ratios[0];
        let spread = ratios
            .iter()
            .map(|r| (r - r0).norm() / r0.norm())
            .fold(0.0f64, f64::max);
        let residual = Residual {
            mode: Mode::Float,
            value: if spread.is_finite() { spread } else { f64::INFINITY },
            exact_zero: spread == 0.0,
        };
        rec.record_residual(variant.label(), &format!("|q|={q_abs}"), residual);
    }
    rec.finish()
}

fn scalar_diag<F: Field>(dim: usize, c: &F) -> Matrix<F> {
    Matrix::identity(dim).scale(c)
}

/// Verify the intertwining relations implied by the reflection equation:
/// Cartan commutation, nearest-neighbour and same-block exchange, the full
/// mixed-block relations and their reduced A/B/C/D form, `B_ji = D_ji`, and
/// the conjugation rule for weight-shifting operators.
pub fn check_intertwining_suite<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
) -> Report {
    let mut rec = recorder("intertwining", rep, grad, bp);
    let kappa = match k_operator(rep, grad, bp, x) {
        Ok(k) => k,
        Err(err) => {
            rec.error("kappa", "", &err);
            return rec.finish();
        }
    };
    let n = rep.rank();
    let a = bp.a;
    let dim = rep.dim();
    let k = kappa.matrix();
    let s = grad.total();
    let xp = |e: i64| x.powi(e).expect("x nonzero");
    let xw = |i: usize| xp(-2 * grad.xi(i));
    let d = rep.q().clone() - rep.q_inv();
    let (ep, em) = (&bp.eps_plus, &bp.eps_minus);
    let same_block = |i: usize, j: usize| (i <= a && j <= a) || (i > a && j > a);
    let e = |i: usize, j: usize| rep.gen(i, j);
    let eb = |i: usize, j: usize| rep.genbar(i, j);
    let qp = |terms: &[(usize, i64)], shift: i64| rep.qpow(terms, shift);
    let lin = |m: &Matrix<F>, c: &F| m.scale(c);

    for i in 1..=n {
        let q2 = qp(&[(i, 2)], 0);
        rec.compare("cartan", &format!("i={i}"), &(&q2 * &k), &(&k * &q2));
    }
    for j in 1..n {
        if j == a {
            continue;
        }
        let w = format!("j={j}");
        let up = e(j, j + 1);
        rec.compare("neighbour-raise", &w, &lin(&(up * &k), &xw(j)), &lin(&(&k * up), &xw(j + 1)));
        let down = e(j + 1, j);
        rec.compare("neighbour-lower", &w, &lin(&(down * &k), &xw(j + 1)), &lin(&(&k * down), &xw(j)));
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j || !same_block(i, j) {
                continue;
            }
            let w = format!("j={j},i={i}");
            let lhs = lin(&(eb(j, i) * &k), &xw(j));
            rec.compare("same-block-bar", &w, &lhs, &lin(&(&k * eb(j, i)), &xw(i)));
            let lhs = lin(&(e(j, i) * &k), &xw(j));
            rec.compare("same-block", &w, &lhs, &lin(&(&k * e(j, i)), &xw(i)));

            // Compared as two sides rather than against zero, so that the
            // float residual is relative to the size of the terms.
            let mut lhs = lin(&(e(j, i) * &k), &xw(j));
            let mut rhs = lin(&(&k * eb(j, i)), &xw(i));
            if j < i {
                for kk in (j + 1)..i {
                    let t = &(e(kk, i) * &k) * eb(j, kk);
                    rhs = &rhs + &lin(&t, &(d.clone() * &xw(kk)));
                }
                rec.compare("full-descending", &w, &lhs, &rhs);
            } else {
                for kk in (i + 1)..j {
                    let t = &(e(kk, i) * &k) * eb(j, kk);
                    lhs = &lhs + &lin(&t, &(d.clone() * &xw(kk)));
                }
                rec.compare("full-ascending", &w, &lhs, &rhs);
            }
        }
    }

    let xs = xp(s);
    let xsi = xp(-s);
    for i in 1..=n {
        for j in 1..=n {
            let w = format!("j={j},i={i}");
            if i <= a && a < j {
                // Full mixed-block relation, upper-left source.
                let head = &(e(j, i) * &(&qp(&[(j, -2)], 0).scale(&(ep.clone() * &xsi)) + &scalar_diag(dim, em))) * &k;
                let mut inner = Matrix::square_zeros(dim);
                for kk in 1..i {
                    let t = &(&(&qp(&[(i, 1)], 0) * e(kk, i)) * &qp(&[(kk, 1)], 0)) * &(&k * eb(j, kk));
                    inner = &inner + &lin(&t, &(ep.clone() * &xs * &xw(kk)));
                }
                for kk in (j + 1)..=n {
                    let t = &(&(e(kk, i) * &k) * &qp(&[(kk, -1)], 0)) * &(eb(j, kk) * &qp(&[(j, -1)], 0));
                    inner = &inner + &lin(&t, &(ep.clone() * &xsi * &xw(kk)));
                }
                for kk in (i + 1)..j {
                    let t = &(e(kk, i) * &k) * eb(j, kk);
                    inner = &inner - &lin(&t, &(em.clone() * &xw(kk)));
                }
                let tail = &k * &(eb(j, i) * &(&qp(&[(i, 2)], -2).scale(&(ep.clone() * &xs)) + &scalar_diag(dim, em)));
                let total = &(&lin(&head, &xw(j)) - &lin(&inner, &d)) - &lin(&tail, &xw(i));
                rec.zero("full-mixed-upper", &w, &total);

                let (am, bm, cm, dm) = (a_op(rep, j, i), b_op(rep, j, i, a), c_op(rep, j, i), d_op(rep, j, i, a));
                let lhs = &(&lin(&am, &(ep.clone() * &xsi)) + &lin(&bm, em)) * &k;
                let rhs = &k * &(&lin(&cm, &(ep.clone() * &xs)) + &lin(&dm, em));
                rec.compare("abcd-upper", &w, &lin(&lhs, &xw(j)), &lin(&rhs, &xw(i)));
                rec.compare("b-equals-d", &w, &bm, &dm);

                let sum_lo: Vec<(usize, i64)> = (1..=a).map(|kk| (kk, 2)).collect();
                let sum_hi: Vec<(usize, i64)> = ((a + 1)..=n).map(|kk| (kk, -2)).collect();
                let den = &qp(&sum_lo, -2).scale(&(ep.clone() * &xs)) + &scalar_diag(dim, em);
                let num = &qp(&sum_hi, 0).scale(&(ep.clone() * &xsi)) + &scalar_diag(dim, em);
                let lhs = &(&k * e(j, i)) * &den;
                let rhs = lin(&(&(e(j, i) * &k) * &num), &xp(2 * (grad.xi(i) - grad.xi(j))));
                rec.compare("conjugation-upper", &w, &lhs, &rhs);
            }
            if j <= a && a < i {
                let head = &(e(j, i) * &(&qp(&[(j, 2)], 0).scale(&(ep.clone() * &xs)) + &scalar_diag(dim, em))) * &k;
                let mut inner = Matrix::square_zeros(dim);
                for kk in 1..j {
                    let t = &(&(e(kk, i) * &qp(&[(kk, 1)], 0)) * &k) * &(eb(j, kk) * &qp(&[(j, 1)], 0));
                    inner = &inner + &lin(&t, &(ep.clone() * &xs * &xw(kk)));
                }
                for kk in (i + 1)..=n {
                    let t = &(&(&qp(&[(i, -1)], 0) * e(kk, i)) * &k) * &(&qp(&[(kk, -1)], 0) * eb(j, kk));
                    inner = &inner + &lin(&t, &(ep.clone() * &xsi * &xw(kk)));
                }
                for kk in (j + 1)..i {
                    let t = &(e(kk, i) * &k) * eb(j, kk);
                    inner = &inner - &lin(&t, &(em.clone() * &xw(kk)));
                }
                let tail = &k * &(eb(j, i) * &(&qp(&[(i, -2)], 2).scale(&(ep.clone() * &xsi)) + &scalar_diag(dim, em)));
                let total = &(&lin(&head, &xw(j)) + &lin(&inner, &d)) - &lin(&tail, &xw(i));
                rec.zero("full-mixed-lower", &w, &total);

                let (am, bm, cm, dm) = (a_op(rep, j, i), b_op(rep, j, i, a), c_op(rep, j, i), d_op(rep, j, i, a));
                let lhs = &(&lin(&am, &(ep.clone() * &xs)) + &lin(&bm, em)) * &k;
                let rhs = &k * &(&lin(&cm, &(ep.clone() * &xsi)) + &lin(&dm, em));
                rec.compare("abcd-lower", &w, &lin(&lhs, &xw(j)), &lin(&rhs, &xw(i)));
                rec.compare("b-equals-d", &w, &bm, &dm);

                let sum_lo: Vec<(usize, i64)> = (1..=a).map(|kk| (kk, 2)).collect();
                let sum_hi: Vec<(usize, i64)> = ((a + 1)..=n).map(|kk| (kk, -2)).collect();
                let den = &qp(&sum_hi, 2).scale(&(ep.clone() * &xsi)) + &scalar_diag(dim, em);
                let num = &qp(&sum_lo, 0).scale(&(ep.clone() * &xs)) + &scalar_diag(dim, em);
                let lhs = &(&k * e(j, i)) * &den;
                let rhs = lin(&(&(e(j, i) * &k) * &num), &xp(2 * (grad.xi(i) - grad.xi(j))));
                rec.compare("conjugation-lower", &w, &lhs, &rhs);
            }
        }
    }
    rec.finish()
}

/// Verify the representation constraints that make the K-operator a
/// solution: both chains for every mixed pair, and the diagonality
/// condition of the L Lbar product.
pub fn check_constraints<F: Field>(rep: &Rep<F>, a: usize) -> Report {
    let n = rep.rank();
    let mut rec = Recorder::new("constraints")
        .param("N", n)
        .param("D", rep.dim())
        .param("a", a)
        .with_mask(rep.interior().map(<[bool]>::to_vec));
    let lo: Vec<(usize, i64)> = (1..=a).map(|k| (k, 2)).collect();
    let hi: Vec<(usize, i64)> = ((a + 1)..=n).map(|k| (k, 2)).collect();
    let neg = |t: &[(usize, i64)]| t.iter().map(|&(k, c)| (k, -c)).collect::<Vec<_>>();
    let mut any = false;
    for i in 1..=n {
        for j in 1..=n {
            let w = format!("j={j},i={i}");
            if i <= a && a < j {
                any = true;
                let b = b_op(rep, j, i, a);
                let via_a = &a_op(rep, j, i) * &rep.qpow(&hi, 0);
                let via_c = &c_op(rep, j, i) * &rep.qpow(&neg(&lo), 2);
                rec.compare("upper-via-a", &w, &b, &via_a);
                rec.compare("upper-via-c", &w, &b, &via_c);
            }
            if j <= a && a < i {
                any = true;
                let b = b_op(rep, j, i, a);
                let via_a = &a_op(rep, j, i) * &rep.qpow(&neg(&lo), 0);
                let via_c = &c_op(rep, j, i) * &rep.qpow(&hi, -2);
                rec.compare("lower-via-a", &w, &b, &via_a);
                rec.compare("lower-via-c", &w, &b, &via_c);
            }
        }
    }
    if !any {
        rec.skip("chain-constraints", "no mixed pair for this splitting index");
    } else if n == 2 {
        rec.annotate_last("trivially satisfied");
    }
    let shift = central_shift(rep);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let w = format!("j={j},i={i}");
            let (am, cm) = (a_op(rep, j, i), c_op(rep, j, i));
            if i < j {
                rec.compare("a-c-shift", &w, &(&am * &shift), &cm);
            } else {
                rec.compare("a-c-shift", &w, &am, &(&cm * &shift));
            }
        }
    }
    rec.finish()
}

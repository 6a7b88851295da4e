use std::collections::BTreeMap;

use crate::affine::{evaluate, AffineGenSet, Gradation, Variant};
use crate::glrep::{Rep, RepKind};
use crate::reflection::{k_operator, BoundaryParams};
use crate::report::{Expectation, Recorder, Report, Status};
use crate::scalars::{comm, qcomm, Field, Matrix};

use super::zelem::{build_khat, rho, rho_tilde, z_minus_boundary_form, KhatPair, ZCase, ZTable};

/// Tag, the two generators of a quartic relation, and its right-hand side.
type QuarticCase<'a, F> = (&'a str, &'a Matrix<F>, &'a Matrix<F>, Matrix<F>);

fn qc<F: Field>(a: &Matrix<F>, b: &Matrix<F>, alpha: &F) -> Matrix<F> {
    qcomm(a, b, alpha).expect("square operators of equal size")
}

fn recorder<F: Field>(check: &str, rep: &Rep<F>, grad: &Gradation, bp: &BoundaryParams<F>) -> Recorder {
    Recorder::new(check)
        .param("N", rep.rank())
        .param("D", rep.dim())
        .param("grad", grad)
        .param("a", bp.a)
        .with_mask(rep.interior().map(<[bool]>::to_vec))
}

fn split_error(rec: &mut Recorder, n: usize, a: usize) -> bool {
    if a < 1 || a >= n {
        rec.skip("split", "the relation suite needs 1 <= a <= N-1");
        true
    } else {
        false
    }
}

/// Verify `ev_{1/x}(Z_ji) K(x) = K(x) evbar_x(Z_ji)` for every pair, together
/// with the agreement of the alternative boundary expressions for `Z^-`.
pub fn check_z_intertwining<F: Field>(rep: &Rep<F>, grad: &Gradation, bp: &BoundaryParams<F>, x: &F) -> Report {
    let mut rec = recorder("z-intertwining", rep, grad, bp);
    let n = rep.rank();
    if split_error(&mut rec, n, bp.a) {
        return rec.finish();
    }
    let built = (|| {
        let kappa = k_operator(rep, grad, bp, x)?.matrix();
        let left = evaluate(rep, grad, &x.inv()?, Variant::Ev)?;
        let right = evaluate(rep, grad, x, Variant::EvBar)?;
        Ok((kappa, ZTable::build(bp, &left)?, ZTable::build(bp, &right)?, left))
    })();
    let (kappa, zl, zr, left) = match built {
        Ok(t) => t,
        Err(err) => {
            rec.error("build", "", &err);
            return rec.finish();
        }
    };
    for j in 1..=n {
        for i in 1..=n {
            let w = format!("j={j},i={i}");
            let tag = match zl.get(j, i).case {
                ZCase::Diagonal => "diagonal",
                ZCase::Raising => "raising",
                ZCase::Lowering => "lowering",
                ZCase::Mixed => "mixed",
            };
            rec.compare(tag, &w, &(zl.z(j, i) * &kappa), &(&kappa * zr.z(j, i)));
        }
    }
    let a = bp.a;
    for (j, i) in (a + 1..=n).map(|i| (a, i)).chain((a + 1..=n).map(|j| (j, a))) {
        let w = format!("j={j},i={i}");
        match z_minus_boundary_form(j, i, a, &left) {
            Ok(alt) => {
                let minus = zl.get(j, i).minus.as_ref().expect("mixed element");
                rec.compare("boundary-form", &w, minus, &alt);
            }
            Err(err) => rec.error("boundary-form", &w, &err),
        }
    }
    rec.finish()
}

/// Whether the relation suite is asserted or only explored on `rep`.
/// Oscillator realizations are asserted; at rank two every representation
/// is; fundamental realizations of higher rank are explored.
pub fn onsager_expectation<F: Field>(rep: &Rep<F>) -> Expectation {
    match rep.kind() {
        RepKind::Oscillator { .. } => Expectation::Assert,
        _ if rep.rank() == 2 => Expectation::Assert,
        _ => Expectation::Explore,
    }
}

struct Suite<'a, F: Field> {
    gens: &'a AffineGenSet<F>,
    z: ZTable<F>,
    n: usize,
    a: usize,
    q: F,
    qi: F,
}

impl<F: Field> Suite<'_, F> {
    fn qp(&self, e: i64) -> F {
        self.q.powi(e).expect("q nonzero")
    }

    fn ea(&self) -> &Matrix<F> {
        self.z.z(self.a, self.a + 1)
    }

    fn fa(&self) -> &Matrix<F> {
        self.z.z(self.a + 1, self.a)
    }

    fn en(&self) -> &Matrix<F> {
        self.z.z(self.n, 1)
    }

    fn fnn(&self) -> &Matrix<F> {
        self.z.z(1, self.n)
    }

    /// `[A, [A, [A, B]_{q1}]_{q2}]_{q3}`.
    fn cubic(&self, a: &Matrix<F>, b: &Matrix<F>, q1: i64, q2: i64, q3: i64) -> Matrix<F> {
        let t = qc(a, b, &self.qp(q1));
        let t = qc(a, &t, &self.qp(q2));
        qc(a, &t, &self.qp(q3))
    }

    /// `[A, [A, B]_{q1}]_{q2}`.
    fn double(&self, a: &Matrix<F>, b: &Matrix<F>, q1: i64, q2: i64) -> Matrix<F> {
        qc(a, &qc(a, b, &self.qp(q1)), &self.qp(q2))
    }
}

fn theta(b: bool) -> i64 {
    i64::from(b)
}

/// Verify the commutation relations among `Z_ji`, `khat^±_ji` and the
/// remaining affine generators on evaluated generators `ev_x`.
pub fn check_onsager_relations<F: Field>(rep: &Rep<F>, grad: &Gradation, bp: &BoundaryParams<F>, x: &F) -> Report {
    let mut rec = recorder("onsager-relations", rep, grad, bp).with_expectation(onsager_expectation(rep));
    let n = rep.rank();
    let a = bp.a;
    if split_error(&mut rec, n, a) {
        return rec.finish();
    }
    let gens = match evaluate(rep, grad, x, Variant::Ev) {
        Ok(g) => g,
        Err(err) => {
            rec.error("evaluate", "", &err);
            return rec.finish();
        }
    };
    let z = match ZTable::build(bp, &gens) {
        Ok(z) => z,
        Err(err) => {
            rec.error("z-table", "", &err);
            return rec.finish();
        }
    };
    let s = Suite {
        gens: &gens,
        z,
        n,
        a,
        q: rep.q().clone(),
        qi: rep.q_inv().clone(),
    };
    let mut khat: BTreeMap<(usize, usize), KhatPair<F>> = BTreeMap::new();
    for j in 1..=a {
        for i in a + 1..=n {
            khat.insert((j, i), build_khat(j, i, bp, &gens).expect("indices in range"));
        }
    }
    cartan_relations(&mut rec, &s, &khat);
    quartic_relations(&mut rec, &s, &khat);
    serre_like_relations(&mut rec, &s);
    ultralocal_relations(&mut rec, &s);
    ladder_relations(&mut rec, &s);
    if n > 2 && (a == 1 || a == n - 1) {
        cubic_relations(&mut rec, &s, &khat);
    }
    restricted_affine_relations(&mut rec, &s);
    rec.finish()
}

fn cartan_relations<F: Field>(rec: &mut Recorder, s: &Suite<'_, F>, khat: &BTreeMap<(usize, usize), KhatPair<F>>) {
    let (n, a) = (s.n, s.a);
    for (&(j, i), kp) in khat {
        for (&(r, t), kq) in khat {
            let w = format!("j={j},i={i},r={r},s={t}");
            rec.zero("khat-commute-mixed", &w, &comm(&kp.plus, &kq.minus));
            rec.zero("khat-commute-plus", &w, &comm(&kp.plus, &kq.plus));
            rec.zero("khat-commute-minus", &w, &comm(&kp.minus, &kq.minus));
        }
        for l in 1..=n {
            let w = format!("j={j},i={i},l={l}");
            rec.zero("khat-cartan", &w, &comm(&kp.plus, s.gens.k(l)));
            rec.zero("khat-cartan", &w, &comm(&kp.minus, s.gens.k(l)));
        }
    }
    for l in 1..=n {
        for j in 1..=n {
            for i in 1..=n {
                let w = format!("l={l},j={j},i={i}");
                let zji = s.z.z(j, i);
                let c = F::from_int(theta(l == j) - theta(l == i));
                rec.compare("cartan-weight", &w, &comm(s.gens.k(l), zji), &zji.scale(&c));
            }
        }
    }
    for (&(j, i), kp) in khat {
        for r in 1..=n {
            for t in 1..=n {
                let w = format!("j={j},i={i},r={r},s={t}");
                let zrs = s.z.z(r, t);
                let ep = theta(r <= j) - theta(i <= r) - theta(t <= j) + theta(i <= t);
                let lhs = &kp.plus * zrs;
                rec.compare("khat-plus-exchange", &w, &lhs, &(zrs * &kp.plus).scale(&s.qp(ep)));
                let em = -theta(j <= r && r <= a) + theta(a < r && r <= i) + theta(j <= t && t <= a)
                    - theta(a < t && t <= i);
                let lhs = &kp.minus * zrs;
                rec.compare("khat-minus-exchange", &w, &lhs, &(zrs * &kp.minus).scale(&s.qp(em)));
            }
        }
    }
}

fn quartic_relations<F: Field>(rec: &mut Recorder, s: &Suite<'_, F>, khat: &BTreeMap<(usize, usize), KhatPair<F>>) {
    let rt = rho_tilde(&s.q).expect("q^2 != 1");
    let ka = &khat[&(s.a, s.a + 1)];
    let kn = &khat[&(1, s.n)];
    let sq = |m: &Matrix<F>| m * m;
    let quartic = |a: &Matrix<F>, b: &Matrix<F>| {
        let t = qc(a, b, &s.qp(2));
        qc(a, &comm(a, &t), &s.qp(-2))
    };
    let cases: [QuarticCase<'_, F>; 4] = [
        ("quartic-e-a", s.ea(), s.fa(), &sq(&ka.plus) - &sq(&ka.minus)),
        ("quartic-e-N", s.en(), s.fnn(), &sq(&kn.minus) - &sq(&kn.plus)),
        ("quartic-f-a", s.fa(), s.ea(), &sq(&ka.minus) - &sq(&ka.plus)),
        ("quartic-f-N", s.fnn(), s.en(), &sq(&kn.plus) - &sq(&kn.minus)),
    ];
    for (tag, x, y, kdiff) in cases {
        let rhs = (&(x * &kdiff) * x).scale(&rt);
        rec.compare(tag, "", &quartic(x, y), &rhs);
    }
}

fn serre_like_relations<F: Field>(rec: &mut Recorder, s: &Suite<'_, F>) {
    let (n, a) = (s.n, s.a);
    let g = s.gens;
    let quartic = |x: &Matrix<F>, y: &Matrix<F>| {
        let t = qc(x, y, &s.qp(2));
        qc(x, &comm(x, &t), &s.qp(-2))
    };
    if 2 <= a && a + 2 <= n {
        rec.zero("hat-serre", "e_a,e_N", &quartic(s.ea(), s.en()));
        rec.zero("hat-serre", "f_a,f_N", &quartic(s.fa(), s.fnn()));
        rec.zero("hat-serre", "e_N,e_a", &quartic(s.en(), s.ea()));
        rec.zero("hat-serre", "f_N,f_a", &quartic(s.fnn(), s.fa()));
        rec.zero("hat-exchange", "f_N,e_a", &qc(s.fnn(), s.ea(), &s.qp(-2)));
        rec.zero("hat-exchange", "e_N,f_a", &qc(s.en(), s.fa(), &s.qp(2)));
    }
    // [A,[A,B]]_{q^2} with an unsubscripted inner commutator.
    let lower_serre = |x: &Matrix<F>, y: &Matrix<F>, outer: i64| qc(x, &comm(x, y), &s.qp(outer));
    let mut neighbour = |tag: &str, l: usize, hat_e: &Matrix<F>, hat_f: &Matrix<F>, hat_name: &str| {
        let w = format!("{hat_name},l={l}");
        rec.zero(tag, &format!("e_l,e:{w}"), &s.double(g.e(l), hat_e, 1, -1));
        rec.zero(tag, &format!("e:{w},e_l"), &s.double(hat_e, g.e(l), 1, -1));
        rec.zero(tag, &format!("f_l,f:{w}"), &lower_serre(g.f(l), hat_f, 2));
        rec.zero(tag, &format!("f:{w},f_l"), &lower_serre(hat_f, g.f(l), -2));
    };
    if 2 <= a && a < n {
        neighbour("serre-left", a - 1, s.ea(), s.fa(), "a");
        neighbour("serre-left", 1, s.en(), s.fnn(), "N");
    }
    if a + 2 <= n {
        neighbour("serre-right", a + 1, s.ea(), s.fa(), "a");
        neighbour("serre-right", n - 1, s.en(), s.fnn(), "N");
    }
    if 2 <= a && a < n {
        rec.zero("serre-left", &format!("e_{},f:a", a - 1), &qc(g.e(a - 1), s.fa(), &s.qi));
        rec.zero("serre-left", "e_1,f:N", &qc(g.e(1), s.fnn(), &s.qi));
    }
    if a + 2 <= n {
        rec.zero("serre-right", &format!("e_{},f:a", a + 1), &qc(g.e(a + 1), s.fa(), &s.qi));
        rec.zero("serre-right", &format!("e_{},f:N", n - 1), &qc(g.e(n - 1), s.fnn(), &s.qi));
    }
}

fn ultralocal_relations<F: Field>(rec: &mut Recorder, s: &Suite<'_, F>) {
    let (n, a) = (s.n, s.a);
    let g = s.gens;
    for i in 1..n {
        if i + 2 <= a || i >= a + 2 {
            let w = format!("i={i}");
            rec.zero("ultralocal-a", &w, &comm(g.e(i), s.ea()));
            rec.zero("ultralocal-a", &w, &comm(g.e(i), s.fa()));
            rec.zero("ultralocal-a", &w, &comm(g.f(i), s.fa()));
        }
        if (2 <= i && i < a) || (a < i && i + 2 <= n) {
            let w = format!("i={i}");
            rec.zero("ultralocal-N", &w, &comm(g.e(i), s.en()));
            rec.zero("ultralocal-N", &w, &comm(g.e(i), s.fnn()));
            rec.zero("ultralocal-N", &w, &comm(g.f(i), s.fnn()));
        }
        if i != a {
            let w = format!("i={i}");
            rec.zero("ultralocal-f", &w, &comm(g.f(i), s.ea()));
            rec.zero("ultralocal-f", &w, &comm(g.f(i), s.en()));
        }
    }
}

fn ladder_relations<F: Field>(rec: &mut Recorder, s: &Suite<'_, F>) {
    let (n, a) = (s.n, s.a);
    let g = s.gens;
    for i in 2..=a {
        for j in a + 1..=n {
            let w = format!("i={i},j={j}");
            rec.compare("ladder-e-left", &w, &qc(g.e(i - 1), s.z.z(i, j), &s.q), s.z.z(i - 1, j));
            let rhs = s.z.z(j, i - 1) * &g.qk(&[(i - 1, 1), (i, -1)], -1);
            rec.compare("ladder-f-left", &w, &comm(s.z.z(j, i), g.f(i - 1)), &rhs);
        }
    }
    for i in 1..=a {
        for j in a + 1..n {
            let w = format!("i={i},j={j}");
            rec.compare("ladder-e-right", &w, &qc(s.z.z(i, j), g.e(j), &s.qi), s.z.z(i, j + 1));
            let rhs = s.z.z(j + 1, i) * &g.qk(&[(j, 1), (j + 1, -1)], 0);
            rec.compare("ladder-f-right", &w, &comm(g.f(j), s.z.z(j, i)), &rhs);
        }
    }
}

fn cubic_relations<F: Field>(rec: &mut Recorder, s: &Suite<'_, F>, khat: &BTreeMap<(usize, usize), KhatPair<F>>) {
    let n = s.n;
    let r = rho(&s.q).expect("q nonzero");
    let sq = |m: &Matrix<F>| m * m;
    let g = s.gens;
    let side = |c: F, x: &Matrix<F>, k: &Matrix<F>, tail: Matrix<F>| (&(&(x * &sq(k)) * x) * &tail).scale(&(c * &r));
    if s.a == 1 {
        let k1m = &khat[&(1, 2)].minus;
        let knp = &khat[&(1, n)].plus;
        let (f1, fnn, e1, en) = (s.fa(), s.fnn(), s.ea(), s.en());
        let z2n = s.z.z(2, n).clone();
        let zn2 = s.z.z(n, 2) * &g.qk(&[(n, 1), (2, -1)], 0);
        rec.compare("cubic-left", "f_1", &s.cubic(f1, fnn, 3, 1, -1), &side(s.qp(-1), f1, k1m, z2n.clone()));
        rec.compare("cubic-left", "f_N", &s.cubic(fnn, f1, -3, -1, 1), &side(-s.qp(-4), fnn, k1m, z2n));
        rec.compare("cubic-left", "e_1", &s.cubic(e1, en, 3, 1, -1), &side(-s.qp(5), e1, knp, zn2.clone()));
        rec.compare("cubic-left", "e_N", &s.cubic(en, e1, -3, -1, 1), &side(s.qp(2), en, knp, zn2));
    }
    if s.a == n - 1 {
        let knm = &khat[&(1, n)].minus;
        let kap = &khat[&(n - 1, n)].plus;
        let (fa, fnn, ea, en) = (s.fa(), s.fnn(), s.ea(), s.en());
        let z1 = s.z.z(1, n - 1) * &g.qk(&[(1, 2)], 0);
        let z2 = s.z.z(n - 1, 1) * &g.qk(&[(1, -1), (n - 1, -1)], 0);
        rec.compare("cubic-right", "f_a", &s.cubic(fa, fnn, 3, 1, -1), &side(-s.qp(2), fa, knm, z1.clone()));
        rec.compare("cubic-right", "f_N", &s.cubic(fnn, fa, -3, -1, 1), &side(s.qp(1), fnn, knm, z1));
        rec.compare("cubic-right", "e_a", &s.cubic(ea, en, 3, 1, -1), &side(F::one(), ea, kap, z2.clone()));
        rec.compare("cubic-right", "e_N", &s.cubic(en, ea, -3, -1, 1), &side(-s.qp(-1), en, kap, z2));
    }
}

/// The affine relations among the generators untouched by the boundary:
/// `e_i, f_i` for `i != a, N`, and all `k_i`.
fn restricted_affine_relations<F: Field>(rec: &mut Recorder, s: &Suite<'_, F>) {
    let (n, a) = (s.n, s.a);
    let g = s.gens;
    let free: Vec<usize> = (1..n).filter(|&i| i != a).collect();
    for l in 1..=n {
        for m in 1..=n {
            rec.zero("restricted-k-k", &format!("l={l},m={m}"), &comm(g.k(l), g.k(m)));
        }
        for &i in &free {
            let w = format!("l={l},i={i}");
            let c = F::from_int(theta(l == i) - theta(l == i + 1));
            rec.compare("restricted-k-e", &w, &comm(g.k(l), g.e(i)), &g.e(i).scale(&c));
            rec.compare("restricted-k-f", &w, &comm(g.k(l), g.f(i)), &g.f(i).scale(&-c));
        }
    }
    let zero = Matrix::square_zeros(g.dim());
    for &i in &free {
        for &j in &free {
            let w = format!("i={i},j={j}");
            let rhs = if i == j { g.qbracket_h(i) } else { zero.clone() };
            rec.compare("restricted-e-f", &w, &comm(g.e(i), g.f(j)), &rhs);
            if i.abs_diff(j) == 1 {
                rec.zero("restricted-serre-e", &w, &s.double(g.e(i), g.e(j), 1, -1));
                rec.zero("restricted-serre-f", &w, &s.double(g.f(i), g.f(j), -1, 1));
            } else if i != j {
                rec.zero("restricted-commuting", &w, &comm(g.e(i), g.e(j)));
                rec.zero("restricted-commuting", &w, &comm(g.f(i), g.f(j)));
            }
        }
    }
}

/// Iterate the ladder identities outwards from `Z_{a,a+1}` and `Z_{a+1,a}`
/// and compare every regenerated mixed element against its direct
/// construction.
pub fn check_ladder_consistency<F: Field>(rep: &Rep<F>, grad: &Gradation, bp: &BoundaryParams<F>, x: &F) -> Report {
    let mut rec = recorder("ladder-consistency", rep, grad, bp);
    let n = rep.rank();
    let a = bp.a;
    if split_error(&mut rec, n, a) {
        return rec.finish();
    }
    let built = evaluate(rep, grad, x, Variant::Ev).and_then(|g| Ok((ZTable::build(bp, &g)?, g)));
    let (z, g) = match built {
        Ok(t) => t,
        Err(err) => {
            rec.error("build", "", &err);
            return rec.finish();
        }
    };
    let (q, qi) = (rep.q(), rep.q_inv());
    // Raising side: Z_{a,j} by right steps, then Z_{i,j} by left steps.
    let mut row = vec![z.z(a, a + 1).clone()];
    for j in a + 1..n {
        let next = qc(row.last().expect("nonempty"), g.e(j), qi);
        row.push(next);
    }
    for (offset, start) in row.into_iter().enumerate() {
        let j = a + 1 + offset;
        let mut cur = start;
        for i in (1..=a).rev() {
            rec.compare("regenerated-upper", &format!("i={i},j={j}"), &cur, z.z(i, j));
            if i > 1 {
                cur = qc(g.e(i - 1), &cur, q);
            }
        }
    }
    // Lowering side: Z_{j,a} by f-steps on the left index, then Z_{j,i}.
    let mut col = vec![z.z(a + 1, a).clone()];
    for j in a + 1..n {
        let step = &comm(g.f(j), col.last().expect("nonempty")) * &g.qk(&[(j, -1), (j + 1, 1)], 0);
        col.push(step);
    }
    for (offset, start) in col.into_iter().enumerate() {
        let j = a + 1 + offset;
        let mut cur = start;
        for i in (1..=a).rev() {
            rec.compare("regenerated-lower", &format!("j={j},i={i}"), &cur, z.z(j, i));
            if i > 1 {
                cur = &comm(&cur, g.f(i - 1)) * &g.qk(&[(i - 1, -1), (i, 1)], 1);
            }
        }
    }
    rec.finish()
}

/// Run the relation suite at several spectral values and require every
/// instance to have the same outcome at every draw; an identity holding
/// only at isolated values is reported as a failure.
pub fn check_onsager_genericity<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    xs: &[F],
) -> Report {
    let mut merged = Report::new();
    let mut outcomes: BTreeMap<(String, String), Vec<Status>> = BTreeMap::new();
    for x in xs {
        let report = check_onsager_relations(rep, grad, bp, x);
        for e in &report.entries {
            let key = (e.tag.clone(), e.witness.clone().unwrap_or_default());
            let holds = match e.status {
                Status::Finding => {
                    if e.note.as_deref() == Some("holds") {
                        Status::Pass
                    } else {
                        Status::Fail
                    }
                }
                other => other,
            };
            outcomes.entry(key).or_default().push(holds);
        }
        merged.extend(report);
    }
    let mut rec = recorder("onsager-genericity", rep, grad, bp).param("draws", xs.len());
    let unstable: Vec<String> = outcomes
        .iter()
        .filter(|(_, v)| v.windows(2).any(|w| w[0] != w[1]))
        .map(|((tag, w), _)| format!("{tag}[{w}]"))
        .collect();
    rec.condition("stable-across-draws", "", unstable.is_empty(), &unstable.join(" "));
    merged.extend(rec.finish());
    merged
}

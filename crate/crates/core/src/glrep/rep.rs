use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{AlgebraError, Result};
use crate::scalars::{qcomm, qnum, qnum_real, Field, Matrix, QPower};

#[derive(Debug, Clone, PartialEq)]
pub enum RepKind {
    Fundamental,
    /// Truncated q-oscillator realization with integer highest weight `m`.
    Oscillator { m: u32 },
    /// Float-only exploratory realization with non-integer `m`, truncated at
    /// total occupation `cutoff`.
    GenericOscillator { m: f64, cutoff: u32 },
}

/// A concrete representation of `U_q(gl(N))`: matrices for every `e_ij`
/// and `ebar_ij` together with the weight of every basis vector.
#[derive(Debug, Clone)]
pub struct Rep<F> {
    kind: RepKind,
    rank: usize,
    q: F,
    q_inv: F,
    basis: Vec<Vec<u32>>,
    /// Integer part of each weight. For integer highest weight this is the
    /// whole weight; in generic mode `lambda_1` is shifted by `m`.
    weights: Vec<Vec<i64>>,
    q_m: Option<F>,
    central: F,
    central_int: Option<i64>,
    gen: Vec<Matrix<F>>,
    genbar: Vec<Matrix<F>>,
    interior: Option<Vec<bool>>,
}

impl<F: Field> Rep<F> {
    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn q_inv(&self) -> &F {
        &self.q_inv
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn weight(&self, v: usize) -> &[i64] {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// Value of the central element `c = sum_i e_ii`.
    pub fn central(&self) -> &F {
        &self.central
    }

    /// `m` when the weights are integral.
    pub fn central_int(&self) -> Option<i64> {
        self.central_int
    }

    pub fn is_integral(&self) -> bool {
        self.q_m.is_none()
    }

    /// Basis vectors far enough from the truncation boundary to be trusted
    /// in residual norms (generic mode only).
    pub fn interior(&self) -> Option<&[bool]> {
        self.interior.as_deref()
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.rank).contains(&i) && (1..=self.rank).contains(&j),
            "generator index ({i},{j}) out of range"
        );
        (i - 1) * self.rank + (j - 1)
    }

    pub fn gen(&self, i: usize, j: usize) -> &Matrix<F> {
        &self.gen[self.idx(i, j)]
    }

    pub fn genbar(&self, i: usize, j: usize) -> &Matrix<F> {
        &self.genbar[self.idx(i, j)]
    }

    pub fn identity(&self) -> Matrix<F> {
        Matrix::identity(self.dim())
    }

    /// Diagonal values of `q^{sum_k c_k e_kk + shift}`.
    pub fn qpow_values(&self, terms: &[(usize, i64)], shift: i64) -> Vec<F> {
        let exps: Vec<i64> = self
            .weights
            .iter()
            .map(|w| shift + terms.iter().map(|&(k, c)| c * w[k - 1]).sum::<i64>())
            .collect();
        let mut vals = QPower::new(self.q.clone(), exps)
            .values()
            .expect("q is nonzero");
        if let Some(qm) = &self.q_m {
            let c1: i64 = terms.iter().filter(|t| t.0 == 1).map(|t| t.1).sum();
            if c1 != 0 {
                let f = qm.powi(c1).expect("q^m is nonzero");
                for v in &mut vals {
                    *v = v.clone() * &f;
                }
            }
        }
        vals
    }

    /// `q^{sum_k c_k e_kk + shift}` as a diagonal matrix.
    pub fn qpow(&self, terms: &[(usize, i64)], shift: i64) -> Matrix<F> {
        Matrix::from_diag(self.qpow_values(terms, shift))
    }

    /// `(q^H - q^{-H}) / (q - q^{-1})` for `H = sum_k c_k e_kk`.
    pub fn qbracket(&self, terms: &[(usize, i64)]) -> Matrix<F> {
        let plus = self.qpow_values(terms, 0);
        let neg: Vec<(usize, i64)> = terms.iter().map(|&(k, c)| (k, -c)).collect();
        let minus = self.qpow_values(&neg, 0);
        let den = (self.q.clone() - &self.q_inv).inv().expect("q^2 != 1");
        Matrix::from_diag(
            plus.into_iter()
                .zip(minus)
                .map(|(a, b)| (a - b) * &den)
                .collect(),
        )
    }

    /// Copy with a single entry of `e_ij` (and `ebar_ij` when they share a
    /// matrix) shifted by `delta`; used for negative controls.
    pub fn perturbed(&self, i: usize, j: usize, row: usize, col: usize, delta: F) -> Rep<F> {
        let mut out = self.clone();
        let k = out.idx(i, j);
        let v = out.gen[k].get(row, col).clone() + &delta;
        out.gen[k].set(row, col, v);
        if (i as i64 - j as i64).abs() <= 1 {
            out.genbar[k] = out.gen[k].clone();
        }
        out
    }
}

/// The fundamental representation: `e_ij = ebar_ij = E_ij`.
pub fn fundamental_rep<F: Field>(n: usize, q: F) -> Result<Rep<F>> {
    if n < 2 {
        return Err(AlgebraError::InvalidRank(n));
    }
    let q_inv = Field::inv(&q).map_err(|_| AlgebraError::ZeroParameter("q"))?;
    let mut gen = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            gen.push(Matrix::unit(n, i, j));
        }
    }
    let weights = (0..n)
        .map(|v| (0..n).map(|k| i64::from(k == v)).collect())
        .collect();
    Ok(Rep {
        kind: RepKind::Fundamental,
        rank: n,
        q,
        q_inv,
        basis: (0..n as u32).map(|v| vec![v]).collect(),
        weights,
        q_m: None,
        central: F::one(),
        central_int: Some(1),
        genbar: gen.clone(),
        gen,
        interior: None,
    })
}

/// Occupation vectors `(n_2, ..., n_N)` with total at most `cap`, in graded
/// lexicographic order.
pub fn occupation_basis(n: usize, cap: u32) -> Vec<Vec<u32>> {
    fn compositions(total: u32, parts: usize, out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            compositions(total - first, parts - 1, out, prefix);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=cap {
        compositions(total, n - 1, &mut out, &mut Vec::new());
    }
    out
}

struct OscillatorBuilder<'a, F> {
    n: usize,
    q: &'a F,
    basis: &'a [Vec<u32>],
    index: HashMap<Vec<u32>, usize>,
    qnums: Vec<F>,
}

impl<'a, F: Field> OscillatorBuilder<'a, F> {
    fn new(n: usize, q: &'a F, basis: &'a [Vec<u32>], cap: u32) -> Result<Self> {
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let qnums = (0..=i64::from(cap) + 1)
            .map(|k| qnum(k, q))
            .collect::<Result<_>>()?;
        Ok(OscillatorBuilder {
            n,
            q,
            basis,
            index,
            qnums,
        })
    }

    /// Mode `k` (2..=N) occupation of basis vector `v`.
    fn occ(&self, v: usize, k: usize) -> u32 {
        self.basis[v][k - 2]
    }

    fn partial(&self, v: usize, lo: usize, hi: usize) -> i64 {
        (lo.max(2)..=hi)
            .map(|k| i64::from(self.occ(v, k)))
            .sum()
    }

    fn qp(&self, e: i64) -> F {
        self.q.powi(e).expect("q nonzero")
    }

    /// Closed-form matrix of `e_ij` (`bar = false`) or `ebar_ij`.
    fn generator(&self, i: usize, j: usize, bar: bool, top: &dyn Fn(i64) -> F, m: &F) -> Matrix<F> {
        let dim = self.basis.len();
        let sign = if bar { -1 } else { 1 };
        let mut out = Matrix::square_zeros(dim);
        for v in 0..dim {
            let state = &self.basis[v];
            let total: i64 = state.iter().map(|&x| i64::from(x)).sum();
            if i == j {
                let val = if i == 1 {
                    m.clone() - &F::from_int(total)
                } else {
                    F::from_int(i64::from(self.occ(v, i)))
                };
                out.set(v, v, val);
                continue;
            }
            let mut target = state.clone();
            let coeff = if i == 1 {
                // e_1j = c_j q^{sum_{k=2}^{j-1} n_k}
                let nj = self.occ(v, j);
                if nj == 0 {
                    continue;
                }
                target[j - 2] -= 1;
                self.qnums[nj as usize].clone() * &self.qp(sign * self.partial(v, 2, j - 1))
            } else if j == 1 {
                // e_i1 = c^dag_i [m - sum n]_q q^{-sum_{k=2}^{i-1} n_k}
                target[i - 2] += 1;
                top(total) * &self.qp(-sign * self.partial(v, 2, i - 1))
            } else {
                let nj = self.occ(v, j);
                if nj == 0 {
                    continue;
                }
                target[j - 2] -= 1;
                target[i - 2] += 1;
                let exp = if i < j {
                    self.partial(v, i + 1, j - 1)
                } else {
                    -self.partial(v, j + 1, i - 1)
                };
                self.qnums[nj as usize].clone() * &self.qp(sign * exp)
            };
            if coeff.is_zero() {
                continue;
            }
            if let Some(&w) = self.index.get(&target) {
                out.set(w, v, coeff);
            }
        }
        out
    }

    fn all(&self, top: &dyn Fn(i64) -> F, m: &F) -> (Vec<Matrix<F>>, Vec<Matrix<F>>) {
        let mut gen = Vec::with_capacity(self.n * self.n);
        let mut genbar = Vec::with_capacity(self.n * self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                gen.push(self.generator(i, j, false, top, m));
                genbar.push(self.generator(i, j, true, top, m));
            }
        }
        (gen, genbar)
    }
}

fn oscillator_weights(basis: &[Vec<u32>], m: i64) -> Vec<Vec<i64>> {
    basis
        .iter()
        .map(|s| {
            let total: i64 = s.iter().map(|&x| i64::from(x)).sum();
            let mut w = vec![m - total];
            w.extend(s.iter().map(|&x| i64::from(x)));
            w
        })
        .collect()
}

/// q-oscillator (Holstein-Primakoff) realization with highest weight
/// `(m, 0, ..., 0)`, restricted to the invariant subspace of total
/// occupation at most `m`. All root vectors are taken from the closed forms.
pub fn oscillator_rep<F: Field>(n: usize, m: i64, q: F) -> Result<Rep<F>> {
    if n < 2 {
        return Err(AlgebraError::InvalidRank(n));
    }
    if m < 0 {
        return Err(AlgebraError::InvalidParameter(format!(
            "highest weight m must be non-negative, got {m}"
        )));
    }
    let q_inv = Field::inv(&q).map_err(|_| AlgebraError::ZeroParameter("q"))?;
    let cap = m as u32;
    let basis = occupation_basis(n, cap);
    let builder = OscillatorBuilder::new(n, &q, &basis, cap)?;
    let top = |total: i64| qnum(m - total, &q).expect("q nonzero");
    let (gen, genbar) = builder.all(&top, &F::from_int(m));
    let weights = oscillator_weights(&basis, m);
    Ok(Rep {
        kind: RepKind::Oscillator { m: cap },
        rank: n,
        q_inv,
        basis,
        weights,
        q_m: None,
        central: F::from_int(m),
        central_int: Some(m),
        gen,
        genbar,
        interior: None,
        q,
    })
}

/// Exploratory realization for real, possibly non-integer `m` with a hard
/// occupation cutoff. States within `margin` of the cutoff are marked as
/// boundary and excluded from residual norms.
pub fn oscillator_rep_generic(
    n: usize,
    m: f64,
    cutoff: u32,
    margin: u32,
    q: Complex64,
) -> Result<Rep<Complex64>> {
    if n < 2 {
        return Err(AlgebraError::InvalidRank(n));
    }
    if margin >= cutoff {
        return Err(AlgebraError::InvalidParameter(
            "cutoff must exceed the boundary margin".into(),
        ));
    }
    let q_inv = Field::inv(&q).map_err(|_| AlgebraError::ZeroParameter("q"))?;
    let basis = occupation_basis(n, cutoff);
    let builder = OscillatorBuilder::new(n, &q, &basis, cutoff)?;
    let top = |total: i64| qnum_real(m - total as f64, q);
    let m_c = Complex64::new(m, 0.0);
    let (gen, genbar) = builder.all(&top, &m_c);
    let weights = oscillator_weights(&basis, 0);
    let interior = basis
        .iter()
        .map(|s| s.iter().sum::<u32>() + margin <= cutoff)
        .collect();
    Ok(Rep {
        kind: RepKind::GenericOscillator { m, cutoff },
        rank: n,
        q_inv,
        basis,
        weights,
        q_m: Some(q.powf(m)),
        central: m_c,
        central_int: None,
        gen,
        genbar,
        interior: Some(interior),
        q,
    })
}

/// `[e_ik, e_kj]` with the q-weight prescribed for `e_ij` (`bar = false`) or
/// `ebar_ij`, for any intermediate `k` strictly between `i` and `j`.
pub fn root_via<F: Field>(rep: &Rep<F>, i: usize, j: usize, k: usize, bar: bool) -> Matrix<F> {
    assert!(
        (i < k && k < j) || (j < k && k < i),
        "intermediate index {k} must lie strictly between {i} and {j}"
    );
    let descending = i > j;
    let alpha = if descending != bar { rep.q() } else { rep.q_inv() };
    let (a, b) = if bar {
        (rep.genbar(i, k), rep.genbar(k, j))
    } else {
        (rep.gen(i, k), rep.gen(k, j))
    };
    qcomm(a, b, alpha).expect("generator shapes agree")
}

/// Recompute every `e_ij`, `ebar_ij` with `|i - j| >= 2` from the simple
/// root generators: `k = j + 1` below the diagonal, `k = i + 1` above it.
pub fn derive_root_vectors<F: Field>(rep: &Rep<F>) -> Rep<F> {
    let mut out = rep.clone();
    let n = rep.rank();
    for dist in 2..n {
        for i in 1..=n {
            for j in 1..=n {
                if i.abs_diff(j) != dist {
                    continue;
                }
                let k = if i > j { j + 1 } else { i + 1 };
                let e = root_via(&out, i, j, k, false);
                let eb = root_via(&out, i, j, k, true);
                let idx = out.idx(i, j);
                out.gen[idx] = e;
                out.genbar[idx] = eb;
            }
        }
    }
    out
}

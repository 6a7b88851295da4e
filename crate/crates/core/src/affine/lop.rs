use crate::block::BlockOp;
use crate::error::{AlgebraError, Result};
use crate::glrep::Rep;
use crate::scalars::{Field, Matrix};

use super::gradation::Gradation;

/// An operator on `V (x) C^N` whose blocks are Laurent polynomials in the
/// spectral parameter: block `(k, j)` is `sum_t x^{p_t} M_t`.
#[derive(Debug, Clone)]
pub struct LOperator<F> {
    n: usize,
    dim: usize,
    terms: Vec<Vec<(i64, Matrix<F>)>>,
}

impl<F: Field> LOperator<F> {
    fn new(n: usize, dim: usize) -> Self {
        LOperator {
            n,
            dim,
            terms: vec![Vec::new(); n * n],
        }
    }

    fn push(&mut self, k: usize, j: usize, power: i64, coeff: Matrix<F>) {
        if !coeff.is_zero() {
            self.terms[(k - 1) * self.n + (j - 1)].push((power, coeff));
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient terms of block `(k, j)`.
    pub fn terms(&self, k: usize, j: usize) -> &[(i64, Matrix<F>)] {
        &self.terms[(k - 1) * self.n + (j - 1)]
    }

    /// Evaluate at spectral value `x`.
    pub fn at(&self, x: &F) -> Result<BlockOp<F>> {
        if x.is_zero() {
            return Err(AlgebraError::ZeroParameter("x"));
        }
        Ok(BlockOp::from_blocks(self.n, self.dim, |k, j| {
            let mut acc = Matrix::square_zeros(self.dim);
            for (p, m) in self.terms(k, j) {
                acc = &acc + &m.scale(&x.powi(*p).expect("x nonzero"));
            }
            acc
        }))
    }

    /// Leading coefficient as `x -> 0` when all powers are non-negative.
    pub fn at_zero(&self) -> Option<BlockOp<F>> {
        if self.terms.iter().flatten().any(|(p, _)| *p < 0) {
            return None;
        }
        Some(BlockOp::from_blocks(self.n, self.dim, |k, j| {
            self.terms(k, j)
                .iter()
                .filter(|(p, _)| *p == 0)
                .fold(Matrix::square_zeros(self.dim), |acc, (_, m)| &acc + m)
        }))
    }
}

fn check_rank<F: Field>(rep: &Rep<F>, grad: &Gradation) -> Result<()> {
    if rep.rank() != grad.rank() {
        return Err(AlgebraError::DimensionMismatch {
            left: format!("representation of rank {}", rep.rank()),
            right: format!("gradation of rank {}", grad.rank()),
        });
    }
    Ok(())
}

/// Coefficient form of `L(x)`:
/// block `(k, j)` is `x^{-xi_k+xi_j} L+_kj - x^{s-xi_k+xi_j} L-_kj`.
pub fn l_operator<F: Field>(rep: &Rep<F>, grad: &Gradation) -> Result<LOperator<F>> {
    check_rank(rep, grad)?;
    let n = rep.rank();
    let s = grad.total();
    let d = rep.q().clone() - rep.q_inv();
    let mut op = LOperator::new(n, rep.dim());
    for k in 1..=n {
        for j in 1..=n {
            let base = -grad.xi(k) + grad.xi(j);
            if k == j {
                op.push(k, k, base, rep.qpow(&[(k, 1)], 0));
                op.push(k, k, s + base, -&rep.qpow(&[(k, -1)], 0));
            } else if k > j {
                let plus = (rep.gen(j, k) * &rep.qpow(&[(j, 1)], 0)).scale(&d);
                op.push(k, j, base, plus);
            } else {
                let minus = (&rep.qpow(&[(k, -1)], 0) * rep.gen(j, k)).scale(&-d.clone());
                op.push(k, j, s + base, -&minus);
            }
        }
    }
    Ok(op)
}

/// Coefficient form of `Lbar(x)`:
/// block `(k, j)` is `-x^{-s-xi_k+xi_j} Lbar+_kj + x^{-xi_k+xi_j} Lbar-_kj`.
pub fn lbar_operator<F: Field>(rep: &Rep<F>, grad: &Gradation) -> Result<LOperator<F>> {
    check_rank(rep, grad)?;
    let n = rep.rank();
    let s = grad.total();
    let d = rep.q().clone() - rep.q_inv();
    let mut op = LOperator::new(n, rep.dim());
    for k in 1..=n {
        for j in 1..=n {
            let base = -grad.xi(k) + grad.xi(j);
            if k == j {
                op.push(k, k, -s + base, -&rep.qpow(&[(k, -1)], 0));
                op.push(k, k, base, rep.qpow(&[(k, 1)], 0));
            } else if k > j {
                let plus = (&rep.qpow(&[(k, -1)], 0) * rep.genbar(j, k)).scale(&-d.clone());
                op.push(k, j, -s + base, -&plus);
            } else {
                let minus = (rep.genbar(j, k) * &rep.qpow(&[(j, 1)], 0)).scale(&d);
                op.push(k, j, base, minus);
            }
        }
    }
    Ok(op)
}

pub fn build_l<F: Field>(rep: &Rep<F>, grad: &Gradation, x: &F) -> Result<BlockOp<F>> {
    l_operator(rep, grad)?.at(x)
}

pub fn build_lbar<F: Field>(rep: &Rep<F>, grad: &Gradation, x: &F) -> Result<BlockOp<F>> {
    lbar_operator(rep, grad)?.at(x)
}

fn tensor_unit<F: Field>(n: usize, i: usize, j: usize, k: usize, l: usize) -> Matrix<F> {
    Matrix::unit(n, i, j).kron(&Matrix::unit(n, k, l))
}

fn rmatrix<F: Field>(grad: &Gradation, q: &F, x: &F, bar: bool) -> Result<Matrix<F>> {
    if x.is_zero() {
        return Err(AlgebraError::ZeroParameter("x"));
    }
    let q_inv = q.inv().map_err(|_| AlgebraError::ZeroParameter("q"))?;
    let n = grad.rank();
    let s = grad.total();
    let sign = if bar { -1 } else { 1 };
    let xs = x.powi(sign * s)?;
    let d = q.clone() - &q_inv;
    let mut r = Matrix::square_zeros(n * n);
    let add = |r: &mut Matrix<F>, m: Matrix<F>, c: F| {
        *r = &*r + &m.scale(&c);
    };
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                add(&mut r, tensor_unit(n, i, i, i, i), q.clone() - &(xs.clone() * &q_inv));
                continue;
            }
            add(&mut r, tensor_unit(n, i, i, j, j), F::one() - &xs);
            let dxi = grad.xi(i) - grad.xi(j);
            // R: (i<j) x^{xi_i-xi_j}, (i>j) x^{s+xi_i-xi_j};
            // Rbar: (i>j) x^{xi_i-xi_j}, (i<j) x^{-s+xi_i-xi_j}.
            let power = match (bar, i < j) {
                (false, true) | (true, false) => dxi,
                (false, false) => s + dxi,
                (true, true) => -s + dxi,
            };
            add(&mut r, tensor_unit(n, i, j, j, i), d.clone() * &x.powi(power)?);
        }
    }
    Ok(r)
}

/// The explicit trigonometric R-matrix on `C^N (x) C^N`.
pub fn build_r<F: Field>(grad: &Gradation, q: &F, x: &F) -> Result<Matrix<F>> {
    rmatrix(grad, q, x, false)
}

/// The explicit barred R-matrix on `C^N (x) C^N`.
pub fn build_rbar<F: Field>(grad: &Gradation, q: &F, x: &F) -> Result<Matrix<F>> {
    rmatrix(grad, q, x, true)
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use crate::error::{AlgebraError, Result};

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn square_zeros(dim: usize) -> Self {
        Self::zeros(dim, dim)
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::square_zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = F::one();
        }
        m
    }

    pub fn from_diag(diag: Vec<F>) -> Self {
        let dim = diag.len();
        let mut m = Self::square_zeros(dim);
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i * dim + i] = d;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Matrix unit `E_ij` (1-based indices, as in the algebra).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::square_zeros(dim);
        m.data[(i - 1) * dim + (j - 1)] = F::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// `diag(d) * self`.
    pub fn scale_rows(&self, d: &[F]) -> Self {
        assert_eq!(d.len(), self.rows, "row scaling length");
        Self::from_fn(self.rows, self.cols, |r, c| d[r].clone() * self.get(r, c))
    }

    /// `self * diag(d)`.
    pub fn scale_cols(&self, d: &[F]) -> Self {
        assert_eq!(d.len(), self.cols, "column scaling length");
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone() * &d[c])
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        // Operators here are very sparse; skip zero entries on both sides.
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * other.cols + c;
                    let prod = a.clone() * b;
                    out.data[idx] = std::mem::replace(&mut out.data[idx], F::zero()) + prod;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with the left factor as the major index.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |r, c| {
            let a = self.get(r / other.rows, c / other.cols);
            if a.is_zero() {
                F::zero()
            } else {
                a.clone() * other.get(r % other.rows, c % other.cols)
            }
        })
    }

    /// Keep only rows and columns whose mask entry is true.
    pub fn restrict(&self, mask: &[bool]) -> Self {
        let keep: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        Self::from_fn(keep.len(), keep.len(), |r, c| {
            self.get(keep[r], keep[c]).clone()
        })
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_add(rhs).expect("matrix addition shape")
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_sub(rhs).expect("matrix subtraction shape")
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_mul(rhs).expect("matrix product shape")
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

impl<F: Field> Add for Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: Matrix<F>) -> Matrix<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: Matrix<F>) -> Matrix<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: Matrix<F>) -> Matrix<F> {
        &self * &rhs
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_scalar().to_string()).collect();
        let width = cells.iter().map(|s| s.len()).max().unwrap_or(1);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `q^M` for a diagonal integer exponent vector `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct QPower<F> {
    pub base: F,
    pub exponents: Vec<i64>,
}

impl<F: Field> QPower<F> {
    pub fn new(base: F, exponents: Vec<i64>) -> Self {
        QPower { base, exponents }
    }

    pub fn values(&self) -> Result<Vec<F>> {
        self.exponents.iter().map(|&e| self.base.powi(e)).collect()
    }

    pub fn materialize(&self) -> Result<Matrix<F>> {
        Ok(Matrix::from_diag(self.values()?))
    }
}

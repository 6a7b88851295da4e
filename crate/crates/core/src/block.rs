//! Operators on `V (x) C^N` stored as an `N x N` grid of `D x D` blocks.
//!
//! Leg 1 is the representation space `V`, leg 2 is `C^N`. Block `(k, j)`
//! holds the `V`-operator multiplying `E_kj`; flattening uses the composite
//! index `(v, i) -> v * N + i` (0-based).

use std::ops::{Add, Mul, Sub};

use crate::scalars::{Field, Matrix};

#[derive(Clone, Debug, PartialEq)]
pub struct BlockOp<F> {
    n: usize,
    dim: usize,
    blocks: Vec<Matrix<F>>,
}

impl<F: Field> BlockOp<F> {
    pub fn zeros(n: usize, dim: usize) -> Self {
        BlockOp {
            n,
            dim,
            blocks: vec![Matrix::square_zeros(dim); n * n],
        }
    }

    /// Build from a function of 1-based block indices.
    pub fn from_blocks(n: usize, dim: usize, mut f: impl FnMut(usize, usize) -> Matrix<F>) -> Self {
        let mut blocks = Vec::with_capacity(n * n);
        for k in 1..=n {
            for j in 1..=n {
                let b = f(k, j);
                assert_eq!(b.rows(), dim, "block ({k},{j}) dimension");
                blocks.push(b);
            }
        }
        BlockOp { n, dim, blocks }
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        Self::from_blocks(n, dim, |k, j| {
            if k == j {
                Matrix::identity(dim)
            } else {
                Matrix::square_zeros(dim)
            }
        })
    }

    /// `op (x) 1`.
    pub fn leg1(op: &Matrix<F>, n: usize) -> Self {
        let dim = op.rows();
        Self::from_blocks(n, dim, |k, j| {
            if k == j {
                op.clone()
            } else {
                Matrix::square_zeros(dim)
            }
        })
    }

    /// `1 (x) m` for an `N x N` matrix `m`.
    pub fn leg2(m: &Matrix<F>, dim: usize) -> Self {
        let n = m.rows();
        Self::from_blocks(n, dim, |k, j| {
            Matrix::identity(dim).scale(m.get(k - 1, j - 1))
        })
    }

    /// `a (x) b` with `a` on leg 1 and `b` on leg 2.
    pub fn kron(a: &Matrix<F>, b: &Matrix<F>) -> Self {
        let n = b.rows();
        Self::from_blocks(n, a.rows(), |k, j| {
            let c = b.get(k - 1, j - 1);
            if c.is_zero() {
                Matrix::square_zeros(a.rows())
            } else {
                a.scale(c)
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block(&self, k: usize, j: usize) -> &Matrix<F> {
        &self.blocks[(k - 1) * self.n + (j - 1)]
    }

    pub fn block_mut(&mut self, k: usize, j: usize) -> &mut Matrix<F> {
        &mut self.blocks[(k - 1) * self.n + (j - 1)]
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    pub fn scale(&self, s: &F) -> Self {
        BlockOp {
            n: self.n,
            dim: self.dim,
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    /// Apply a leg-1 operator on each block from the left: `(op (x) 1) self`.
    pub fn left_leg1(&self, op: &Matrix<F>) -> Self {
        BlockOp {
            n: self.n,
            dim: self.dim,
            blocks: self.blocks.iter().map(|b| op * b).collect(),
        }
    }

    /// `self (op (x) 1)`.
    pub fn right_leg1(&self, op: &Matrix<F>) -> Self {
        BlockOp {
            n: self.n,
            dim: self.dim,
            blocks: self.blocks.iter().map(|b| b * op).collect(),
        }
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        let size = self.n * self.dim;
        Matrix::from_fn(size, size, |r, c| {
            let (v, i) = (r / self.n, r % self.n);
            let (w, j) = (c / self.n, c % self.n);
            self.block(i + 1, j + 1).get(v, w).clone()
        })
    }

    pub fn from_matrix(m: &Matrix<F>, n: usize) -> Self {
        let dim = m.rows() / n;
        Self::from_blocks(n, dim, |k, j| {
            Matrix::from_fn(dim, dim, |v, w| m.get(v * n + k - 1, w * n + j - 1).clone())
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    fn zip(&self, other: &Self, f: impl Fn(&Matrix<F>, &Matrix<F>) -> Matrix<F>) -> Self {
        assert_eq!((self.n, self.dim), (other.n, other.dim), "block shape");
        BlockOp {
            n: self.n,
            dim: self.dim,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl<F: Field> Mul for &BlockOp<F> {
    type Output = BlockOp<F>;
    fn mul(self, rhs: &BlockOp<F>) -> BlockOp<F> {
        assert_eq!((self.n, self.dim), (rhs.n, rhs.dim), "block shape");
        let n = self.n;
        BlockOp::from_blocks(n, self.dim, |k, j| {
            let mut acc = Matrix::square_zeros(self.dim);
            for l in 1..=n {
                let a = self.block(k, l);
                let b = rhs.block(l, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        })
    }
}

impl<F: Field> Add for &BlockOp<F> {
    type Output = BlockOp<F>;
    fn add(self, rhs: &BlockOp<F>) -> BlockOp<F> {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<F: Field> Sub for &BlockOp<F> {
    type Output = BlockOp<F>;
    fn sub(self, rhs: &BlockOp<F>) -> BlockOp<F> {
        self.zip(rhs, |a, b| a - b)
    }
}

/// Product of a sequence of block operators, left to right.
pub fn product<F: Field>(ops: &[&BlockOp<F>]) -> BlockOp<F> {
    let (first, rest) = ops.split_first().expect("empty product");
    rest.iter().fold((*first).clone(), |acc, op| &acc * *op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Exact;

    fn r(n: i64) -> Exact {
        Exact::from_int(n)
    }

    #[test]
    fn flatten_matches_kron_convention() {
        let a = Matrix::from_fn(2, 2, |i, j| r((i * 2 + j) as i64 + 1));
        let b = Matrix::from_fn(3, 3, |i, j| r((i * 3 + j) as i64 - 4));
        let op = BlockOp::kron(&a, &b);
        assert_eq!(op.to_matrix(), a.kron(&b));
        assert_eq!(BlockOp::from_matrix(&op.to_matrix(), 3), op);
    }

    #[test]
    fn product_matches_flat_product() {
        let a = BlockOp::from_blocks(2, 2, |k, j| {
            Matrix::from_fn(2, 2, |v, w| r((k * 7 + j * 3 + v * 2 + w) as i64 % 5 - 2))
        });
        let b = BlockOp::from_blocks(2, 2, |k, j| {
            Matrix::from_fn(2, 2, |v, w| r((k + 2 * j + 3 * v + w) as i64 % 3 - 1))
        });
        assert_eq!((&a * &b).to_matrix(), &a.to_matrix() * &b.to_matrix());
    }
}

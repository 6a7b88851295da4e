//! Numeric tower: exact rationals and complex doubles behind one [`Field`]
//! trait, dense matrices, q-numbers and finite q-Pochhammer / Gamma ratios.

mod field;
mod matrix;
mod qfunc;
mod scalar;

pub use field::Field;
pub use matrix::{Matrix, QPower};
pub use qfunc::{
    comm, gamma_ratio, ln_qpoch, poch_ratio, qcomm, qgamma, qnum, qnum_real, qpoch_truncated,
};
pub use scalar::{Mode, Scalar};

pub use num_complex::Complex64;
pub use num_rational::BigRational;

pub type Exact = BigRational;
pub type Float = Complex64;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{Mode, Scalar};
use crate::error::{AlgebraError, Result};

/// Coefficient field for every matrix in the engine.
///
/// Two instances exist: [`BigRational`] (exact mode) and [`Complex64`]
/// (float mode). Code is written once against this trait, so mixing the two
/// modes inside one computation is rejected by the type checker.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const MODE: Mode;

    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Absolute value as a double, used for residual norms only.
    fn magnitude(&self) -> f64;

    fn to_complex(&self) -> Complex64;

    /// Convert a configuration scalar. Exact values promote to float mode;
    /// float values never demote to exact mode.
    fn from_scalar(s: &Scalar) -> Result<Self>;

    fn to_scalar(&self) -> Scalar;

    /// Real power `self^e`, available only where the field is closed under
    /// it (float mode).
    fn real_power(&self, _e: f64) -> Option<Self> {
        None
    }

    fn is_exact() -> bool {
        Self::MODE == Mode::Exact
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(Self::one() / self.clone())
        }
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * &sq;
            }
        }
        Ok(acc)
    }
}

impl Field for BigRational {
    const MODE: Mode = Mode::Exact;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Exact(r) => Ok(r.clone()),
            Scalar::Float(_) => Err(AlgebraError::ModeMismatch {
                left: "exact",
                right: "float",
            }),
        }
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }
}

impl Field for Complex64 {
    const MODE: Mode = Mode::Float;

    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn from_scalar(s: &Scalar) -> Result<Self> {
        Ok(s.to_complex())
    }

    fn real_power(&self, e: f64) -> Option<Self> {
        Some(self.powf(e))
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }
}

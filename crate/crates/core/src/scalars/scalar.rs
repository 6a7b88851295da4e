use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A dual-mode number as it appears in configuration and reports.
///
/// Arithmetic between two scalars of different modes fails with
/// [`AlgebraError::ModeMismatch`]; there is no implicit promotion.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(Complex64),
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(re: f64) -> Self {
        Scalar::Float(Complex64::new(re, 0.0))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(z) => z.is_zero(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Float(z) => *z,
        }
    }

    /// Re-express in float mode (used when a rational literal is supplied
    /// for a float run).
    pub fn promote(&self) -> Scalar {
        Scalar::Float(self.to_complex())
    }

    fn binary(
        &self,
        other: &Scalar,
        exact: impl FnOnce(&BigRational, &BigRational) -> Result<BigRational>,
        float: impl FnOnce(Complex64, Complex64) -> Result<Complex64>,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => exact(a, b).map(Scalar::Exact),
            (Scalar::Float(a), Scalar::Float(b)) => float(*a, *b).map(Scalar::Float),
            (a, b) => Err(AlgebraError::ModeMismatch {
                left: a.mode().name(),
                right: b.mode().name(),
            }),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| Ok(a + b), |a, b| Ok(a + b))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| Ok(a - b), |a, b| Ok(a - b))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |a, b| Ok(a * b), |a, b| Ok(a * b))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(
            other,
            |a, b| {
                if b.is_zero() {
                    Err(AlgebraError::DivisionByZero)
                } else {
                    Ok(a / b)
                }
            },
            |a, b| {
                if b.is_zero() {
                    Err(AlgebraError::DivisionByZero)
                } else {
                    Ok(a / b)
                }
            },
        )
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Scalar::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl FromStr for Scalar {
    type Err = AlgebraError;

    /// `"p/q"` or an integer parses as exact; anything with a decimal point
    /// or exponent parses as float.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = || AlgebraError::Parse(s.to_string());
        if t.is_empty() {
            return Err(err());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Scalar::Exact(BigRational::new(n, d)));
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return Ok(Scalar::Exact(BigRational::from_integer(n)));
        }
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(Scalar::float)
            .ok_or_else(err)
    }
}

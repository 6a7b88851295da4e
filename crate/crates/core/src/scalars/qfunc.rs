use num_complex::Complex64;
use num_traits::Zero;

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{AlgebraError, Result};

/// Balanced q-number `q^{n-1} + q^{n-3} + ... + q^{1-n}`.
///
/// Equal to `(q^n - q^{-n}) / (q - q^{-1})` whenever that quotient is
/// defined, and to `n` at `q = 1`.
pub fn qnum<F: Field>(n: i64, q: &F) -> Result<F> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroParameter("q"));
    }
    if n < 0 {
        return qnum(-n, q).map(|v| -v);
    }
    let mut acc = F::zero();
    let q2 = q.clone() * q;
    let mut term = q.powi(1 - n)?;
    for _ in 0..n {
        acc = acc + &term;
        term = term * &q2;
    }
    Ok(acc)
}

/// `[X, Y]_alpha = XY - alpha YX`.
pub fn qcomm<F: Field>(a: &Matrix<F>, b: &Matrix<F>, alpha: &F) -> Result<Matrix<F>> {
    let ab = a.try_mul(b)?;
    let ba = b.try_mul(a)?;
    ab.try_sub(&ba.scale(alpha))
}

/// Plain commutator.
pub fn comm<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    qcomm(a, b, &F::one()).expect("commutator shape")
}

/// Ratio `(alpha base^n; base)_inf / (alpha; base)_inf` as a finite product.
pub fn poch_ratio<F: Field>(alpha: &F, base: &F, n: i64) -> Result<F> {
    if n >= 0 {
        let mut prod = F::one();
        let mut term = alpha.clone();
        for j in 0..n {
            let factor = F::one() - &term;
            if factor.is_zero() {
                return Err(AlgebraError::VanishingFactor {
                    context: "poch_ratio",
                    j,
                });
            }
            prod = prod * &factor;
            term = term * base;
        }
        prod.inv()
    } else {
        let inv_base = base.inv()?;
        let mut prod = F::one();
        let mut term = alpha.clone() * &inv_base;
        for j in 1..=(-n) {
            let factor = F::one() - &term;
            if factor.is_zero() {
                return Err(AlgebraError::VanishingFactor {
                    context: "poch_ratio",
                    j: -j,
                });
            }
            prod = prod * &factor;
            term = term * &inv_base;
        }
        Ok(prod)
    }
}

/// `Gamma(z + n) / Gamma(z)` as a finite product.
pub fn gamma_ratio<F: Field>(z: &F, n: i64) -> Result<F> {
    if n >= 0 {
        let mut prod = F::one();
        for j in 0..n {
            let factor = z.clone() + &F::from_int(j);
            if factor.is_zero() {
                return Err(AlgebraError::VanishingFactor {
                    context: "gamma_ratio",
                    j,
                });
            }
            prod = prod * &factor;
        }
        Ok(prod)
    } else {
        let mut prod = F::one();
        for j in 1..=(-n) {
            let factor = z.clone() - &F::from_int(j);
            if factor.is_zero() {
                return Err(AlgebraError::VanishingFactor {
                    context: "gamma_ratio",
                    j: -j,
                });
            }
            prod = prod * &factor;
        }
        prod.inv()
    }
}

/// Truncated q-Pochhammer symbol `prod_{j<terms} (1 - z base^j)`.
pub fn qpoch_truncated(z: Complex64, base: Complex64, terms: usize) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut t = z;
    for _ in 0..terms {
        prod *= Complex64::new(1.0, 0.0) - t;
        t *= base;
    }
    prod
}

/// Natural log of `(z; base)_inf`, summed until the terms fall below
/// machine precision (for `|base| < 1`). Log form keeps products with
/// `|base|` close to one inside the double range.
pub fn ln_qpoch(z: Complex64, base: Complex64, max_terms: usize) -> Complex64 {
    let mut acc = Complex64::zero();
    let mut t = z;
    for _ in 0..max_terms {
        if t.norm() < 1e-18 {
            break;
        }
        acc += (Complex64::new(1.0, 0.0) - t).ln();
        t *= base;
    }
    acc
}

/// q-gamma function `(q;q)_inf / (q^x;q)_inf (1-q)^{1-x}` for real `0 < q < 1`.
pub fn qgamma(x: f64, q: f64) -> f64 {
    let qc = Complex64::new(q, 0.0);
    let max_terms = 10_000_000;
    let ln = ln_qpoch(qc, qc, max_terms) - ln_qpoch(Complex64::new(q.powf(x), 0.0), qc, max_terms);
    (ln.re + (1.0 - x) * (1.0 - q).ln()).exp()
}

/// Float q-number for a real (possibly non-integer) argument.
pub fn qnum_real(x: f64, q: Complex64) -> Complex64 {
    let num = q.powf(x) - q.powf(-x);
    let den = q - q.inv();
    if den.norm() == 0.0 {
        Complex64::new(x, 0.0)
    } else {
        num / den
    }
}

use num_complex::Complex64;

use crate::affine::Gradation;
use crate::error::{AlgebraError, Result};
use crate::glrep::Rep;
use crate::scalars::{ln_qpoch, poch_ratio, qpoch_truncated, Field, Matrix};

/// Boundary data of the diagonal solution: splitting index `a` in `[0, N]`
/// and the two coefficients `eps_+`, `eps_-`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryParams<F> {
    pub a: usize,
    pub eps_plus: F,
    pub eps_minus: F,
}

impl<F: Field> BoundaryParams<F> {
    pub fn new(a: usize, eps_plus: F, eps_minus: F) -> Result<Self> {
        if eps_plus.is_zero() && eps_minus.is_zero() {
            return Err(AlgebraError::InvalidParameter(
                "eps_+ and eps_- cannot both vanish".into(),
            ));
        }
        Ok(BoundaryParams {
            a,
            eps_plus,
            eps_minus,
        })
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.a > n {
            return Err(AlgebraError::InvalidParameter(format!(
                "splitting index a = {} exceeds N = {n}",
                self.a
            )));
        }
        Ok(())
    }
}

/// The diagonal `N x N` solution of the matrix reflection equation.
pub fn k_matrix<F: Field>(
    n: usize,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
) -> Result<Matrix<F>> {
    bp.validate(n)?;
    if x.is_zero() {
        return Err(AlgebraError::ZeroParameter("x"));
    }
    let s = grad.total();
    let xs = x.powi(s)?;
    let xsi = xs.inv()?;
    let diag = (1..=n)
        .map(|k| {
            let lead = x.powi(2 * (s - grad.xi(k))).expect("x nonzero");
            let tail = if k <= bp.a { &xs } else { &xsi };
            lead * &(bp.eps_minus.clone() + &(bp.eps_plus.clone() * tail))
        })
        .collect();
    Ok(Matrix::from_diag(diag))
}

/// Which closed form produced a [`KDiagonal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KBranch {
    /// Normalized from the `eps_+ != 0` family, expansion in `-eps_-/eps_+`.
    Plus,
    /// Normalized from the `eps_- != 0` family, expansion in `-eps_+/eps_-`.
    Minus,
}

/// Weight-diagonal K-operator, stored as one eigenvalue per basis vector.
///
/// Eigenvalues are normalized by their value at the reference weight
/// `S_1 = S_2 = 0`, which removes every infinite product.
#[derive(Debug, Clone, PartialEq)]
pub struct KDiagonal<F> {
    pub values: Vec<F>,
    pub branch: KBranch,
}

impl<F: Field> KDiagonal<F> {
    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_diag(self.values.clone())
    }

    pub fn scaled(&self, c: &F) -> Self {
        KDiagonal {
            values: self.values.iter().map(|v| v.clone() * c).collect(),
            branch: self.branch,
        }
    }

    /// Multiply the eigenvalue at basis vector `v` by `factor`.
    pub fn perturbed(&self, v: usize, factor: &F) -> Self {
        let mut out = self.clone();
        out.values[v] = out.values[v].clone() * factor;
        out
    }
}

/// Sums of a weight that the K-operator depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightSums {
    /// `sum_{k <= a} lambda_k`.
    pub s1: i64,
    /// `sum_{k > a} lambda_k`.
    pub s2: i64,
    /// `sum_k xi_k lambda_k`.
    pub xi_dot: i64,
}

pub fn weight_sums(weight: &[i64], grad: &Gradation, a: usize) -> WeightSums {
    WeightSums {
        s1: weight[..a].iter().sum(),
        s2: weight[a..].iter().sum(),
        xi_dot: weight
            .iter()
            .enumerate()
            .map(|(k, l)| grad.xi(k + 1) * l)
            .sum(),
    }
}

fn integral_m<F: Field>(rep: &Rep<F>) -> Result<i64> {
    rep.central_int().ok_or_else(|| {
        AlgebraError::InvalidParameter("the K-operator needs an integral highest weight".into())
    })
}

/// Normalized eigenvalue at one weight, `eps_+ != 0` family.
pub fn kappa_plus<F: Field>(w: WeightSums, m: i64, s: i64, q: &F, x: &F, alpha: &F) -> Result<F> {
    let q_inv = q.inv()?;
    let qm2 = q_inv.clone() * &q_inv;
    let xs = x.powi(s)?;
    let xsi = xs.inv()?;
    let pref = q.powi(2 * (m - 1) * w.s1)? * &x.powi(2 * (s * w.s1 - w.xi_dot))?;
    let num = poch_ratio(&(alpha.clone() * &xs * &qm2), &qm2, -w.s2)?;
    let den = poch_ratio(&(alpha.clone() * &xsi), &qm2, w.s1)?;
    Ok(pref * &num * &den.inv()?)
}

/// Normalized eigenvalue at one weight, `eps_- != 0` family.
pub fn kappa_minus<F: Field>(w: WeightSums, s: i64, q: &F, x: &F, alpha: &F) -> Result<F> {
    let q_inv = q.inv()?;
    let qm2 = q_inv.clone() * &q_inv;
    let xs = x.powi(s)?;
    let xsi = xs.inv()?;
    let pref = x.powi(-2 * w.xi_dot)?;
    let num = poch_ratio(&(alpha.clone() * &xs * &qm2), &qm2, -w.s1)?;
    let den = poch_ratio(&(alpha.clone() * &xsi), &qm2, w.s2)?;
    Ok(pref * &num * &den.inv()?)
}

/// Evaluate one normalized branch on every basis vector.
pub fn k_operator_branch<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
    branch: KBranch,
) -> Result<KDiagonal<F>> {
    bp.validate(rep.rank())?;
    if x.is_zero() {
        return Err(AlgebraError::ZeroParameter("x"));
    }
    let m = integral_m(rep)?;
    let s = grad.total();
    let q = rep.q();
    let values = match branch {
        KBranch::Plus => {
            let alpha = -(bp.eps_minus.clone() * &bp.eps_plus.inv()?);
            rep.weights()
                .iter()
                .map(|w| kappa_plus(weight_sums(w, grad, bp.a), m, s, q, x, &alpha))
                .collect::<Result<Vec<_>>>()?
        }
        KBranch::Minus => {
            let alpha = -(bp.eps_plus.clone() * &bp.eps_minus.inv()?);
            rep.weights()
                .iter()
                .map(|w| kappa_minus(weight_sums(w, grad, bp.a), s, q, x, &alpha))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(KDiagonal { values, branch })
}

/// The normalized K-operator: the `eps_+ != 0` family when available,
/// otherwise the `eps_- != 0` family.
pub fn k_operator<F: Field>(
    rep: &Rep<F>,
    grad: &Gradation,
    bp: &BoundaryParams<F>,
    x: &F,
) -> Result<KDiagonal<F>> {
    let branch = if bp.eps_plus.is_zero() {
        KBranch::Minus
    } else {
        KBranch::Plus
    };
    k_operator_branch(rep, grad, bp, x, branch)
}

/// The four un-normalized closed forms with their infinite products
/// truncated after `terms` factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralVariant {
    /// `|q| > 1`, `eps_+ != 0`.
    PlusLarge,
    /// `|q| < 1`, `eps_+ != 0`.
    PlusSmall,
    /// `|q| > 1`, `eps_- != 0`.
    MinusLarge,
    /// `|q| < 1`, `eps_- != 0`.
    MinusSmall,
}

impl LiteralVariant {
    pub const ALL: [LiteralVariant; 4] = [
        LiteralVariant::PlusLarge,
        LiteralVariant::PlusSmall,
        LiteralVariant::MinusLarge,
        LiteralVariant::MinusSmall,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LiteralVariant::PlusLarge => "plus-large-q",
            LiteralVariant::PlusSmall => "plus-small-q",
            LiteralVariant::MinusLarge => "minus-large-q",
            LiteralVariant::MinusSmall => "minus-small-q",
        }
    }

    /// Whether the variant's product converges for this `|q|`.
    pub fn applies(self, q_abs: f64) -> bool {
        match self {
            LiteralVariant::PlusLarge | LiteralVariant::MinusLarge => q_abs > 1.0,
            LiteralVariant::PlusSmall | LiteralVariant::MinusSmall => q_abs < 1.0,
        }
    }
}

/// Inputs of the literal (truncated infinite-product) eigenvalues.
#[derive(Debug, Clone, Copy)]
pub struct LiteralParams {
    pub m: i64,
    pub s: i64,
    pub q: Complex64,
    pub x: Complex64,
    pub eps_plus: Complex64,
    pub eps_minus: Complex64,
    pub terms: usize,
}

impl LiteralParams {
    /// Literal eigenvalue of one variant at one weight.
    pub fn eval(&self, variant: LiteralVariant, w: WeightSums) -> Complex64 {
        let f = self.factors(variant, w);
        f.prefactor * qpoch_truncated(f.num, f.base, self.terms) / qpoch_truncated(f.den, f.base, self.terms)
    }

    /// Natural log of the eigenvalue, with each product summed in log form
    /// until its terms drop below machine precision (at most `terms`
    /// factors). Needed when `|q|` is close to one, where the products
    /// themselves leave the double range.
    pub fn ln_eval(&self, variant: LiteralVariant, w: WeightSums) -> Complex64 {
        let f = self.factors(variant, w);
        f.prefactor.ln() + ln_qpoch(f.num, f.base, self.terms) - ln_qpoch(f.den, f.base, self.terms)
    }

    fn factors(&self, variant: LiteralVariant, w: WeightSums) -> LiteralFactors {
        let (q, x, s) = (self.q, self.x, self.s);
        let xs = x.powi(s as i32);
        let xsi = xs.inv();
        let qp = |e: i64| q.powi(e as i32);
        let (q2, qm2) = (q * q, (q * q).inv());
        let (pref, alpha, own, other) = match variant {
            LiteralVariant::PlusLarge | LiteralVariant::PlusSmall => (
                qp(2 * (self.m - 1) * w.s1) * x.powi((2 * (s * w.s1 - w.xi_dot)) as i32),
                -self.eps_minus / self.eps_plus,
                w.s1,
                w.s2,
            ),
            LiteralVariant::MinusLarge | LiteralVariant::MinusSmall => (
                x.powi((-2 * w.xi_dot) as i32),
                -self.eps_plus / self.eps_minus,
                w.s2,
                w.s1,
            ),
        };
        let large = matches!(variant, LiteralVariant::PlusLarge | LiteralVariant::MinusLarge);
        if large {
            LiteralFactors {
                prefactor: pref,
                num: alpha * xs * qp(2 * other - 2),
                den: alpha * xsi * qp(-2 * own),
                base: qm2,
            }
        } else {
            LiteralFactors {
                prefactor: pref,
                num: alpha * xsi * qp(-2 * own + 2),
                den: alpha * xs * qp(2 * other),
                base: q2,
            }
        }
    }
}

/// `prefactor * (num; base)_inf / (den; base)_inf`.
struct LiteralFactors {
    prefactor: Complex64,
    num: Complex64,
    den: Complex64,
    base: Complex64,
}

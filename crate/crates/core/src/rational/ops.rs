use crate::affine::Gradation;
use crate::block::BlockOp;
use crate::error::{AlgebraError, Result};
use crate::glrep::{oscillator_rep, Rep};
use crate::reflection::weight_sums;
use crate::scalars::{gamma_ratio, BigRational, Field, Matrix};


/// Boundary data of the rational limit: the free parameter `p`, the
/// splitting index `a` and the gradation (only its total `s` enters).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalParams<F> {
    pub p: F,
    pub a: usize,
    pub grad: Gradation,
}

impl<F: Field> RationalParams<F> {
    pub fn new(p: F, a: usize, grad: Gradation) -> Result<Self> {
        if a > grad.rank() {
            return Err(AlgebraError::InvalidParameter(format!(
                "splitting index a = {a} exceeds N = {}",
                grad.rank()
            )));
        }
        Ok(RationalParams { p, a, grad })
    }

    pub fn s(&self) -> F {
        F::from_int(self.grad.total())
    }
}

/// The classical `gl(N)` realization on symmetric tensors of degree `m`:
/// the q-oscillator matrices at `q = 1`.
pub fn classical_rep(n: usize, m: i64) -> Result<Rep<BigRational>> {
    classical_rep_in(n, m)
}

/// [`classical_rep`] over any field.
pub fn classical_rep_in<F: Field>(n: usize, m: i64) -> Result<Rep<F>> {
    oscillator_rep(n, m, F::one())
}

fn linear_l<F: Field>(rep: &Rep<F>, diag: &F) -> BlockOp<F> {
    let n = rep.rank();
    let id = rep.identity();
    BlockOp::from_blocks(n, rep.dim(), |i, j| {
        let e = rep.gen(j, i).clone();
        if i == j {
            &e + &id.scale(diag)
        } else {
            e
        }
    })
}

/// `sum_{i,j} (s u delta_ij + e_ji) (x) E_ij`.
pub fn rational_l<F: Field>(rep: &Rep<F>, s: &F, u: &F) -> BlockOp<F> {
    linear_l(rep, &(s.clone() * u))
}

/// `sum_{i,j} (-s u delta_ij + e_ji) (x) E_ij`.
pub fn rational_lbar<F: Field>(rep: &Rep<F>, s: &F, u: &F) -> BlockOp<F> {
    linear_l(rep, &-(s.clone() * u))
}

/// `diag(su + p, ..., su + p, -su + p, ..., -su + p)` with `a` leading entries.
pub fn rational_k_matrix<F: Field>(n: usize, params: &RationalParams<F>, u: &F) -> Matrix<F> {
    let su = params.s() * u;
    Matrix::from_diag(
        (1..=n)
            .map(|k| {
                if k <= params.a {
                    su.clone() + &params.p
                } else {
                    params.p.clone() - &su
                }
            })
            .collect(),
    )
}

/// Which normalized gamma-ratio form produced a [`RationalKappa`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalForm {
    /// `Gamma(-su - p + S_1) / Gamma(su - p + 1 - S_2)`.
    Primary,
    /// `Gamma(-su + p + S_2) / Gamma(su + p + 1 - S_1)`.
    Secondary,
}

/// Eigenvalues of the rational K-operator, normalized so that the
/// (possibly unrealized) weight with `S_1 = S_2 = 0` has eigenvalue one.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalKappa<F> {
    pub values: Vec<F>,
    pub form: RationalForm,
}

impl<F: Field> RationalKappa<F> {
    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_diag(self.values.clone())
    }

    pub fn scaled(&self, c: &F) -> Self {
        RationalKappa {
            values: self.values.iter().map(|v| v.clone() * c).collect(),
            form: self.form,
        }
    }
}

/// Normalized eigenvalue at one weight via finite gamma ratios.
pub fn rational_kappa_at<F: Field>(s1: i64, s2: i64, su: &F, p: &F, form: RationalForm) -> Result<F> {
    let one = F::one();
    let (num, den) = match form {
        RationalForm::Primary => (
            gamma_ratio(&(-su.clone() - p), s1)?,
            gamma_ratio(&(su.clone() - p + &one), -s2)?,
        ),
        RationalForm::Secondary => (
            gamma_ratio(&(p.clone() - su), s2)?,
            gamma_ratio(&(su.clone() + p + &one), -s1)?,
        ),
    };
    Ok(num * den.inv()?)
}

/// The rational K-operator on every basis vector.
pub fn rational_k_operator<F: Field>(
    rep: &Rep<F>,
    params: &RationalParams<F>,
    u: &F,
    form: RationalForm,
) -> Result<RationalKappa<F>> {
    let su = params.s() * u;
    let values = rep
        .weights()
        .iter()
        .map(|w| {
            let ws = weight_sums(w, &params.grad, params.a);
            rational_kappa_at(ws.s1, ws.s2, &su, &params.p, form)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalKappa { values, form })
}

/// `Gamma(z + n) / Gamma(z)` written as `coeff * eps^order` when `z` sits on
/// a pole or zero: vanishing factors are replaced by a formal `eps`.
fn gamma_ratio_order<F: Field>(z: &F, n: i64) -> Result<(i64, F)> {
    let mut order = 0;
    let mut coeff = F::one();
    let range: Vec<i64> = if n >= 0 { (0..n).collect() } else { (1..=-n).map(|j| -j).collect() };
    for j in range {
        let factor = z.clone() + &F::from_int(j);
        if factor.is_zero() {
            order += 1;
        } else {
            coeff = coeff * &factor;
        }
    }
    if n >= 0 {
        Ok((order, coeff))
    } else {
        Ok((-order, coeff.inv()?))
    }
}

/// The K-operator as the projective limit of nearby generic parameters:
/// equal to [`rational_k_operator`] when no gamma factor degenerates, and
/// otherwise keeping only the weights of lowest vanishing order. The flag
/// reports whether a degeneration occurred.
pub fn rational_k_operator_limit<F: Field>(
    rep: &Rep<F>,
    params: &RationalParams<F>,
    u: &F,
    form: RationalForm,
) -> Result<(RationalKappa<F>, bool)> {
    let su = params.s() * u;
    let one = F::one();
    let parts = rep
        .weights()
        .iter()
        .map(|w| {
            let ws = weight_sums(w, &params.grad, params.a);
            let ((on, cn), (od, cd)) = match form {
                RationalForm::Primary => (
                    gamma_ratio_order(&(-su.clone() - &params.p), ws.s1)?,
                    gamma_ratio_order(&(su.clone() - &params.p + &one), -ws.s2)?,
                ),
                RationalForm::Secondary => (
                    gamma_ratio_order(&(params.p.clone() - &su), ws.s2)?,
                    gamma_ratio_order(&(su.clone() + &params.p + &one), -ws.s1)?,
                ),
            };
            Ok((on - od, cn * cd.inv()?))
        })
        .collect::<Result<Vec<_>>>()?;
    let lowest = parts.iter().map(|p| p.0).min().unwrap_or(0);
    let degenerate = parts.iter().any(|p| p.0 != 0);
    let values = parts
        .into_iter()
        .map(|(order, c)| if order == lowest { c } else { F::zero() })
        .collect();
    Ok((RationalKappa { values, form }, degenerate))
}

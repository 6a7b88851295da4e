use crate::affine::AffineGenSet;
use crate::error::{AlgebraError, Result};
use crate::reflection::BoundaryParams;
use crate::scalars::{qcomm, Field, Matrix};

/// The four families of nested q-commutator root vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// `e_[i,j] = [e_i, e_[i+1,j]]_{q^-1}`.
    E,
    /// `ebar_[i,j] = [e_i, ebar_[i+1,j]]_q`.
    EBar,
    /// `f_[i,j] = [f_j, f_[i,j-1]]_q`.
    F,
    /// `fbar_[i,j] = [f_j, fbar_[i,j-1]]_{q^-1}`.
    FBar,
}

fn qc<F: Field>(a: &Matrix<F>, b: &Matrix<F>, alpha: &F) -> Matrix<F> {
    qcomm(a, b, alpha).expect("square operators of equal size")
}

/// Root vector spanning the simple roots `i..=j` of the finite diagram.
pub fn root_vector<F: Field>(kind: RootKind, i: usize, j: usize, gens: &AffineGenSet<F>) -> Result<Matrix<F>> {
    let n = gens.rank();
    if i < 1 || i > j || j >= n {
        return Err(AlgebraError::IndexOutOfRange(format!(
            "root vector [{i},{j}] outside 1 <= i <= j <= {}",
            n - 1
        )));
    }
    let (q, qi) = (gens.q(), gens.q_inv());
    Ok(match kind {
        RootKind::E | RootKind::EBar => {
            let alpha = if kind == RootKind::E { qi } else { q };
            let mut acc = gens.e(j).clone();
            for l in (i..j).rev() {
                acc = qc(gens.e(l), &acc, alpha);
            }
            acc
        }
        RootKind::F | RootKind::FBar => {
            let alpha = if kind == RootKind::F { q } else { qi };
            let mut acc = gens.f(i).clone();
            for l in (i + 1)..=j {
                acc = qc(gens.f(l), &acc, alpha);
            }
            acc
        }
    })
}

/// Which formula produced a Z-element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZCase {
    /// `Z_ii = k_i`.
    Diagonal,
    /// Same block, `j < i`: a raising root vector.
    Raising,
    /// Same block, `i < j`: a lowering root vector.
    Lowering,
    /// `j <= a < i` or `i <= a < j`: an `eps_+`/`eps_-` mixture.
    Mixed,
}

/// One of the elements `Z_ji` commuting with the K-operator through the
/// two evaluation maps.
#[derive(Debug, Clone, PartialEq)]
pub struct ZElement<F> {
    pub j: usize,
    pub i: usize,
    pub case: ZCase,
    /// `Z^+` and `Z^-` components of a mixed element.
    pub plus: Option<Matrix<F>>,
    pub minus: Option<Matrix<F>>,
    /// Assembled element, `eps_+ Z^+ + eps_- Z^-` in the mixed case.
    pub matrix: Matrix<F>,
}

fn check_split(a: usize, n: usize) -> Result<()> {
    if a < 1 || a >= n {
        return Err(AlgebraError::InvalidParameter(format!(
            "splitting index a = {a} must satisfy 1 <= a <= {}",
            n - 1
        )));
    }
    Ok(())
}

fn qk_diff<F: Field>(gens: &AffineGenSet<F>, up: usize, down: usize, shift: i64) -> Matrix<F> {
    gens.qk(&[(up, 1), (down, -1)], shift)
}

/// `Z^+_ji` for `j <= a < i`.
fn plus_upper<F: Field>(j: usize, i: usize, gens: &AffineGenSet<F>) -> Result<Matrix<F>> {
    let n = gens.rank();
    let (q, qi) = (gens.q(), gens.q_inv());
    let fnn = gens.f(n);
    Ok(match (j, i) {
        (1, i) if i == n => fnn * &qk_diff(gens, 1, n, 1),
        (1, i) => &qc(fnn, &root_vector(RootKind::F, i, n - 1, gens)?, q) * &qk_diff(gens, 1, i, 1),
        (j, i) if i == n => {
            &qc(&root_vector(RootKind::FBar, 1, j - 1, gens)?, fnn, qi) * &qk_diff(gens, j, n, 1)
        }
        (j, i) => {
            let inner = qc(&root_vector(RootKind::FBar, 1, j - 1, gens)?, fnn, qi);
            &qc(&inner, &root_vector(RootKind::F, i, n - 1, gens)?, q) * &qk_diff(gens, j, i, 1)
        }
    })
}

/// `Z^-_ji` for `j <= a < i`, from the first two cases.
fn minus_upper<F: Field>(j: usize, i: usize, a: usize, gens: &AffineGenSet<F>) -> Result<Matrix<F>> {
    let head = root_vector(RootKind::EBar, j, a, gens)?;
    if i == a + 1 {
        Ok(head)
    } else {
        Ok(qc(&head, &root_vector(RootKind::E, a + 1, i - 1, gens)?, gens.q_inv()))
    }
}

/// `Z^+_ji` for `i <= a < j`.
fn plus_lower<F: Field>(j: usize, i: usize, gens: &AffineGenSet<F>) -> Result<Matrix<F>> {
    let n = gens.rank();
    let (q, qi) = (gens.q(), gens.q_inv());
    let en = gens.e(n);
    Ok(match (j, i) {
        (j, 1) if j == n => en.clone(),
        (j, 1) => qc(&root_vector(RootKind::EBar, j, n - 1, gens)?, en, q),
        (j, i) if j == n => qc(en, &root_vector(RootKind::E, 1, i - 1, gens)?, qi),
        (j, i) => {
            let inner = qc(en, &root_vector(RootKind::E, 1, i - 1, gens)?, qi);
            qc(&root_vector(RootKind::EBar, j, n - 1, gens)?, &inner, q)
        }
    })
}

/// `Z^-_ji` for `i <= a < j`, from the first two cases.
fn minus_lower<F: Field>(j: usize, i: usize, a: usize, gens: &AffineGenSet<F>) -> Result<Matrix<F>> {
    let tail = root_vector(RootKind::F, i, a, gens)?;
    if j == a + 1 {
        Ok(&tail * &qk_diff(gens, a + 1, i, 1))
    } else {
        let head = root_vector(RootKind::FBar, a + 1, j - 1, gens)?;
        Ok(&qc(&head, &tail, gens.q_inv()) * &qk_diff(gens, j, i, 1))
    }
}

/// The alternative expression for `Z^-_ji` when the `a`-side index equals
/// `a`; it must agree with the generic cases.
pub fn z_minus_boundary_form<F: Field>(j: usize, i: usize, a: usize, gens: &AffineGenSet<F>) -> Result<Matrix<F>> {
    if j == a && a < i {
        root_vector(RootKind::E, a, i - 1, gens)
    } else if i == a && a < j {
        Ok(&root_vector(RootKind::FBar, a, j - 1, gens)? * &qk_diff(gens, j, a, 1))
    } else {
        Err(AlgebraError::IndexOutOfRange(format!(
            "no boundary form for ({j},{i}) at a = {a}"
        )))
    }
}

/// Build `Z_ji` from generators evaluated under one map.
pub fn build_z<F: Field>(j: usize, i: usize, bp: &BoundaryParams<F>, gens: &AffineGenSet<F>) -> Result<ZElement<F>> {
    let n = gens.rank();
    let a = bp.a;
    check_split(a, n)?;
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(AlgebraError::IndexOutOfRange(format!("Z_({j},{i}) with N = {n}")));
    }
    let plain = |case, matrix| ZElement {
        j,
        i,
        case,
        plus: None,
        minus: None,
        matrix,
    };
    let same_block = (i <= a) == (j <= a);
    if i == j {
        return Ok(plain(ZCase::Diagonal, gens.k(i).clone()));
    }
    if same_block {
        return Ok(if j < i {
            plain(ZCase::Raising, root_vector(RootKind::E, j, i - 1, gens)?)
        } else {
            plain(ZCase::Lowering, root_vector(RootKind::F, i, j - 1, gens)?)
        });
    }
    let (plus, minus) = if j <= a {
        (plus_upper(j, i, gens)?, minus_upper(j, i, a, gens)?)
    } else {
        (plus_lower(j, i, gens)?, minus_lower(j, i, a, gens)?)
    };
    let matrix = &plus.scale(&bp.eps_plus) + &minus.scale(&bp.eps_minus);
    Ok(ZElement {
        j,
        i,
        case: ZCase::Mixed,
        plus: Some(plus),
        minus: Some(minus),
        matrix,
    })
}

/// Every `Z_ji` for one generator set, indexed `z(j, i)`.
#[derive(Debug, Clone)]
pub struct ZTable<F> {
    n: usize,
    elems: Vec<ZElement<F>>,
}

impl<F: Field> ZTable<F> {
    pub fn build(bp: &BoundaryParams<F>, gens: &AffineGenSet<F>) -> Result<Self> {
        let n = gens.rank();
        let mut elems = Vec::with_capacity(n * n);
        for j in 1..=n {
            for i in 1..=n {
                elems.push(build_z(j, i, bp, gens)?);
            }
        }
        Ok(ZTable { n, elems })
    }

    pub fn get(&self, j: usize, i: usize) -> &ZElement<F> {
        &self.elems[(j - 1) * self.n + (i - 1)]
    }

    pub fn z(&self, j: usize, i: usize) -> &Matrix<F> {
        &self.get(j, i).matrix
    }

    pub fn iter(&self) -> impl Iterator<Item = &ZElement<F>> {
        self.elems.iter()
    }
}

/// The diagonal Cartan combinations `khat^+_ji`, `khat^-_ji`.
#[derive(Debug, Clone, PartialEq)]
pub struct KhatPair<F> {
    pub plus: Matrix<F>,
    pub minus: Matrix<F>,
}

/// `khat^+_ji = eps_+ q^{sum_{l<=j} k_l - sum_{l>=i} k_l}` and
/// `khat^-_ji = eps_- q^{-sum_{l=j}^{a} k_l + sum_{l=a+1}^{i} k_l}`
/// for `j <= a < i`.
pub fn build_khat<F: Field>(j: usize, i: usize, bp: &BoundaryParams<F>, gens: &AffineGenSet<F>) -> Result<KhatPair<F>> {
    let n = gens.rank();
    let a = bp.a;
    check_split(a, n)?;
    if !(1 <= j && j <= a && a < i && i <= n) {
        return Err(AlgebraError::IndexOutOfRange(format!(
            "khat_({j},{i}) needs 1 <= j <= {a} < i <= {n}"
        )));
    }
    let plus_terms: Vec<(usize, i64)> = (1..=j).map(|l| (l, 1)).chain((i..=n).map(|l| (l, -1))).collect();
    let minus_terms: Vec<(usize, i64)> =
        (j..=a).map(|l| (l, -1)).chain((a + 1..=i).map(|l| (l, 1))).collect();
    Ok(KhatPair {
        plus: gens.qk(&plus_terms, 0).scale(&bp.eps_plus),
        minus: gens.qk(&minus_terms, 0).scale(&bp.eps_minus),
    })
}

/// `rho = (q^3 - q^-3)(q^2 - q^-2)`.
pub fn rho<F: Field>(q: &F) -> Result<F> {
    let qp = |e: i64| q.powi(e);
    Ok((qp(3)? - qp(-3)?) * (qp(2)? - qp(-2)?))
}

/// `rho / (q - q^-1)`, the coefficient of the quartic relations.
pub fn rho_tilde<F: Field>(q: &F) -> Result<F> {
    let d = q.clone() - q.inv()?;
    Ok(rho(q)? * d.inv()?)
}

//! `dump`: print one operator matrix with exact rational entries.

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;

use qreflect_core::affine::{build_l, build_lbar, build_r, build_rbar};
use qreflect_core::block::BlockOp;
use qreflect_core::glrep::{fundamental_rep, oscillator_rep, Rep};
use qreflect_core::rational::{
    classical_rep_in, rational_k_matrix, rational_k_operator_limit, rational_l, rational_lbar, RationalParams,
};
use qreflect_core::reflection::{k_matrix, k_operator, BoundaryParams};
use qreflect_core::scalars::{Field, Matrix, Mode, Scalar};
use qreflect_core::{AlgebraError, Result};

use crate::config::{parse_param, ConfigError, GradSpec, ParamSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    /// Generator e_ij of the representation (needs --i, --j).
    Gen,
    /// Barred root vector ebar_ij (needs --i, --j).
    Genbar,
    /// L(x) as an N x N array of blocks.
    L,
    /// Lbar(x) as an N x N array of blocks.
    Lbar,
    /// R(x) on C^N (x) C^N.
    R,
    /// Rbar(x) on C^N (x) C^N.
    Rbar,
    /// The diagonal K-matrix K(x).
    K,
    /// The diagonal K-operator on the representation.
    Kappa,
    /// Rational L(u) on the classical representation.
    RationalL,
    /// Rational Lbar(u) on the classical representation.
    RationalLbar,
    /// Rational K-matrix K(u).
    RationalK,
    /// Rational K-operator on the classical representation.
    RationalKappa,
}

#[derive(Debug, Clone, Args)]
pub struct DumpArgs {
    #[arg(value_enum)]
    pub operator: Operator,
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
    #[arg(long = "m", default_value_t = 1)]
    pub m: i64,
    /// Use the fundamental representation instead of the q-oscillator one.
    #[arg(long)]
    pub fundamental: bool,
    #[arg(long = "a", default_value_t = 1)]
    pub a: usize,
    #[arg(long = "i", default_value_t = 1)]
    pub i: usize,
    #[arg(long = "j", default_value_t = 2)]
    pub j: usize,
    /// `principal`, `mixed` or `s1:...:sN`.
    #[arg(long, default_value = "principal")]
    pub gradation: String,
    #[arg(long, default_value = "3/2", allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, default_value = "2/5", allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, default_value = "1/3", allow_hyphen_values = true)]
    pub u: String,
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub eps_plus: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub eps_minus: String,
    #[arg(long, default_value = "exact")]
    pub mode: String,
}

#[derive(Debug, thiserror::Error)]
pub enum DumpError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Render the requested operator as text.
pub fn dump(args: &DumpArgs) -> std::result::Result<String, DumpError> {
    let mode = match args.mode.as_str() {
        "exact" => Mode::Exact,
        "float" => Mode::Float,
        other => {
            return Err(ConfigError::Malformed {
                key: "mode".into(),
                value: other.into(),
            }
            .into())
        }
    };
    let fixed = |text: &str, key: &str| -> std::result::Result<Scalar, ConfigError> {
        match parse_param(text, key, mode)? {
            ParamSpec::Value(s) => Ok(s),
            ParamSpec::Random => Err(ConfigError::Malformed {
                key: key.into(),
                value: "random (dump needs explicit values)".into(),
            }),
        }
    };
    let values = DumpValues {
        q: fixed(&args.q, "q")?,
        x: fixed(&args.x, "x")?,
        u: fixed(&args.u, "u")?,
        p: fixed(&args.p, "p")?,
        eps_plus: fixed(&args.eps_plus, "eps_plus")?,
        eps_minus: fixed(&args.eps_minus, "eps_minus")?,
    };
    let grad = match args.gradation.as_str() {
        "principal" => GradSpec::Principal,
        "mixed" => GradSpec::Mixed,
        other => GradSpec::Explicit(
            other
                .split(':')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| ConfigError::Malformed {
                    key: "gradation".into(),
                    value: other.into(),
                })?,
        ),
    };
    let text = match mode {
        Mode::Exact => render::<BigRational>(args, &values, &grad)?,
        Mode::Float => render::<Complex64>(args, &values, &grad)?,
    };
    Ok(text)
}

struct DumpValues {
    q: Scalar,
    x: Scalar,
    u: Scalar,
    p: Scalar,
    eps_plus: Scalar,
    eps_minus: Scalar,
}

enum Rendered<F> {
    Matrix(Matrix<F>),
    Blocks(BlockOp<F>),
}

fn render<F: Field>(args: &DumpArgs, v: &DumpValues, grad: &GradSpec) -> Result<String> {
    let n = args.n;
    let grad = grad
        .resolve(n)
        .ok_or_else(|| AlgebraError::InvalidParameter(format!("gradation {grad} does not fit N = {n}")))?;
    let (q, x, u, p) = (F::from_scalar(&v.q)?, F::from_scalar(&v.x)?, F::from_scalar(&v.u)?, F::from_scalar(&v.p)?);
    let quantum = || -> Result<Rep<F>> {
        if args.fundamental {
            fundamental_rep(n, q.clone())
        } else {
            oscillator_rep(n, args.m, q.clone())
        }
    };
    let bp = || BoundaryParams::new(args.a, F::from_scalar(&v.eps_plus)?, F::from_scalar(&v.eps_minus)?);
    let rparams = || RationalParams::new(p.clone(), args.a, grad.clone());
    let check_index = |k: usize| -> Result<()> {
        if (1..=n).contains(&k) {
            Ok(())
        } else {
            Err(AlgebraError::IndexOutOfRange(format!("{k} not in 1..={n}")))
        }
    };
    let out = match args.operator {
        Operator::Gen | Operator::Genbar => {
            check_index(args.i)?;
            check_index(args.j)?;
            let rep = quantum()?;
            Rendered::Matrix(match args.operator {
                Operator::Gen => rep.gen(args.i, args.j).clone(),
                _ => rep.genbar(args.i, args.j).clone(),
            })
        }
        Operator::L => Rendered::Blocks(build_l(&quantum()?, &grad, &x)?),
        Operator::Lbar => Rendered::Blocks(build_lbar(&quantum()?, &grad, &x)?),
        Operator::R => Rendered::Matrix(build_r(&grad, &q, &x)?),
        Operator::Rbar => Rendered::Matrix(build_rbar(&grad, &q, &x)?),
        Operator::K => Rendered::Matrix(k_matrix(n, &grad, &bp()?, &x)?),
        Operator::Kappa => Rendered::Matrix(k_operator(&quantum()?, &grad, &bp()?, &x)?.matrix()),
        Operator::RationalL => {
            let rep = classical_rep_in::<F>(n, args.m)?;
            Rendered::Blocks(rational_l(&rep, &F::from_int(grad.total()), &u))
        }
        Operator::RationalLbar => {
            let rep = classical_rep_in::<F>(n, args.m)?;
            Rendered::Blocks(rational_lbar(&rep, &F::from_int(grad.total()), &u))
        }
        Operator::RationalK => Rendered::Matrix(rational_k_matrix(n, &rparams()?, &u)),
        Operator::RationalKappa => {
            let rep = classical_rep_in::<F>(n, args.m)?;
            let (kappa, _) = rational_k_operator_limit(&rep, &rparams()?, &u, qreflect_core::rational::RationalForm::Primary)?;
            Rendered::Matrix(kappa.matrix())
        }
    };
    let mut text = format!(
        "# {:?} N={} grad={} mode={}\n",
        args.operator,
        n,
        grad,
        F::MODE
    );
    match out {
        Rendered::Matrix(m) => text.push_str(&format_matrix(&m)),
        Rendered::Blocks(b) => {
            for k in 1..=b.n() {
                for j in 1..=b.n() {
                    text.push_str(&format!("## block ({k},{j})\n"));
                    text.push_str(&format_matrix(b.block(k, j)));
                }
            }
        }
    }
    Ok(text)
}

/// Right-aligned rows of exact (or float) entries.
pub fn format_matrix<F: Field>(m: &Matrix<F>) -> String {
    let cells: Vec<String> = m.entries().iter().map(|e| e.to_scalar().to_string()).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| format!("{:>width$}", cells[r * m.cols() + c]))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

//! Parallel execution of the check grid.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;

use qreflect_core::affine::{
    check_affine_serre, check_ev_evbar, check_gradation_covariance, check_l_intertwining, check_llbar_product,
    check_r_consistency, check_trans_lb, check_weight_zero, check_ybe, evaluate, Gradation, Variant, Which,
};
use qreflect_core::glrep::{
    check_gl_relations, check_recursion_independence, check_root_relations, fundamental_rep, oscillator_rep, Rep,
};
use qreflect_core::onsager::{check_ladder_consistency, check_onsager_genericity, check_z_intertwining};
use qreflect_core::rational::{
    check_classical_gl, check_k_matrix_limit, check_k_operator_convergence, check_k_operator_limit, check_l_limit,
    check_rational_conditions, check_rational_forms, check_rational_intertwining, check_rational_reflection,
    check_rational_reflection_with, classical_rep_in, rational_k_operator, RationalForm, RationalParams,
    K_LIMIT_STEP,
};
use qreflect_core::reflection::{
    check_constraints, check_fundamental_kappa, check_intertwining_suite, check_kappa_weight_function,
    check_kop_branches, check_kop_variants, check_negative_control, check_reflection_l, check_reflection_matrix,
    check_reflection_with, k_operator, BoundaryParams,
};
use qreflect_core::report::{CheckReport, Report, Status};
use qreflect_core::scalars::{Field, Mode, Scalar};
use qreflect_core::{AlgebraError, Result};

use crate::config::{ParamSpec, RunConfig};
use crate::draw::{sample, sample_pooled, unit_rng, Draw, MAX_REDRAWS};
use crate::grid::{expand, RepSpec, Unit};

/// Exponents `k` of the float limit steps `q = 1 ± 10^{-k}`.
pub const LIMIT_STEPS: [i32; 4] = [3, 4, 5, 6];

/// Relative size of the negative-control perturbations.
const PERTURBATION: (i64, i64) = (1, 1000);

/// All entries produced by one grid unit.
#[derive(Debug, Clone)]
pub struct UnitOutcome {
    pub unit: Unit,
    pub entries: Vec<CheckReport>,
}

#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub units: Vec<UnitOutcome>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub finding: usize,
}

impl Summary {
    pub fn of<'a>(entries: impl IntoIterator<Item = &'a CheckReport>) -> Self {
        let mut s = Summary::default();
        for e in entries {
            match e.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Finding => s.finding += 1,
            }
        }
        s
    }
}

impl RunOutput {
    pub fn reports(&self) -> impl Iterator<Item = &CheckReport> {
        self.units.iter().flat_map(|u| u.entries.iter())
    }

    pub fn summary(&self) -> Summary {
        Summary::of(self.reports())
    }

    /// 0 exactly when no entry failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary().fail == 0 {
            0
        } else {
            1
        }
    }
}

/// Thread count from `QREFLECT_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("QREFLECT_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Execute every unit of the grid. Units run in parallel; the output keeps
/// grid order, so it does not depend on scheduling.
pub fn run_suite(cfg: &RunConfig) -> RunOutput {
    let units = expand(cfg);
    let work = || -> Vec<UnitOutcome> {
        units
            .par_iter()
            .map(|unit| UnitOutcome {
                unit: unit.clone(),
                entries: run_unit(cfg, unit),
            })
            .collect()
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    let units = match builder.build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    RunOutput { units }
}

fn gradation_of(unit: &Unit) -> Gradation {
    unit.grad.clone().unwrap_or_else(|| Gradation::principal(unit.n))
}

/// Whether the exact shifted-product check gets `q = q_root^s`.
fn uses_root(cfg: &RunConfig, unit: &Unit) -> bool {
    unit.check.name == "LLbar-product"
        && cfg.mode == Mode::Exact
        && (cfg.q == ParamSpec::Random || matches!(cfg.q_root, ParamSpec::Value(_)))
}

/// Run one unit. Errors and panics become failing entries; draws that
/// land on a pole of the K-operator are redrawn.
pub fn run_unit(cfg: &RunConfig, unit: &Unit) -> Vec<CheckReport> {
    let grad = gradation_of(unit);
    let mut rng = unit_rng(cfg.seed, unit);
    let uses = unit.check.uses;
    let rooted = uses_root(cfg, unit);
    let mut attempts = 0;
    let (mut draws, mut entries) = loop {
        let mut draws = match unit.draw {
            Some(_) => vec![sample(cfg, &mut rng, uses, grad.total())],
            None => sample_pooled(cfg, &mut rng, uses, grad.total(), cfg.repetitions),
        };
        if rooted && cfg.q == ParamSpec::Random {
            for d in &mut draws {
                if let Scalar::Exact(root) = &d.q_root {
                    d.q = Scalar::Exact(root.pow(grad.total() as i32));
                }
            }
        }
        let entries = attempt(cfg, unit, &draws, rooted);
        // A vanishing Pochhammer factor means the drawn parameters sit on a
        // pole of the K-operator: a collision, redrawn like any other.
        let degenerate = entries.iter().any(|e| {
            e.status == Status::Fail && e.note.as_deref().is_some_and(|n| n.contains("vanishing factor"))
        });
        if degenerate && has_random(cfg, uses) && attempts < MAX_REDRAWS {
            attempts += 1;
            continue;
        }
        break (draws, entries);
    };
    draws[0].redraws += attempts;
    if entries.is_empty() {
        entries.push(CheckReport {
            check: unit.check.name.to_string(),
            tag: "empty".into(),
            params: Vec::new(),
            status: Status::Skipped,
            residual: "0".into(),
            elapsed_ms: 0.0,
            witness: None,
            note: Some("no applicable instances".into()),
        });
    }
    let echo = echo_params(unit, &draws, rooted);
    for e in &mut entries {
        let mut params = echo.clone();
        for (k, v) in e.params.drain(..) {
            if !params.iter().any(|(pk, _)| *pk == k) {
                params.push((k, v));
            }
        }
        e.params = params;
    }
    entries
}

fn has_random(cfg: &RunConfig, uses: &[&str]) -> bool {
    let spec = |key: &str| match key {
        "q" => &cfg.q,
        "q_root" => &cfg.q_root,
        "x" => &cfg.x,
        "y" => &cfg.y,
        "u" => &cfg.u,
        "v" => &cfg.v,
        "eps_plus" => &cfg.eps_plus,
        "eps_minus" => &cfg.eps_minus,
        "p" => &cfg.p,
        _ => &ParamSpec::Random,
    };
    uses.iter().any(|k| *spec(k) == ParamSpec::Random)
}

/// Execute once, converting errors and panics into a failing entry.
fn attempt(cfg: &RunConfig, unit: &Unit, draws: &[Draw], rooted: bool) -> Vec<CheckReport> {
    match catch_unwind(AssertUnwindSafe(|| execute(cfg, unit, draws, rooted))) {
        Ok(Ok(report)) => report.entries,
        Ok(Err(err)) => vec![setup_failure(unit, &err.to_string())],
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            vec![setup_failure(unit, &format!("panicked: {msg}"))]
        }
    }
}

fn setup_failure(unit: &Unit, note: &str) -> CheckReport {
    CheckReport {
        check: unit.check.name.to_string(),
        tag: "setup".into(),
        params: Vec::new(),
        status: Status::Fail,
        residual: "nan".into(),
        elapsed_ms: 0.0,
        witness: None,
        note: Some(note.to_string()),
    }
}

fn echo_params(unit: &Unit, draws: &[Draw], rooted: bool) -> Vec<(String, String)> {
    let mut out = unit.params();
    for &key in unit.check.uses {
        if key == "q_root" && !rooted {
            continue;
        }
        let value = if key == "x" && draws.len() > 1 {
            draws.iter().map(|d| d.x.to_string()).collect::<Vec<_>>().join(";")
        } else {
            draws[0].get(key).to_string()
        };
        out.push((key.to_string(), value));
    }
    let redraws: usize = draws.iter().map(|d| d.redraws).sum();
    if redraws > 0 {
        out.push(("redraws".into(), redraws.to_string()));
    }
    out
}

fn execute(cfg: &RunConfig, unit: &Unit, draws: &[Draw], rooted: bool) -> Result<Report> {
    if unit.check.float_only() {
        return execute_float(unit, &draws[0]);
    }
    match cfg.mode {
        Mode::Exact => execute_generic::<BigRational>(cfg, unit, draws, rooted),
        Mode::Float => execute_generic::<Complex64>(cfg, unit, draws, rooted),
    }
}

fn build_rep<F: Field>(spec: RepSpec, n: usize, q: &F, perturb: bool) -> Result<Rep<F>> {
    let rep = match spec {
        RepSpec::Oscillator(m) => oscillator_rep(n, m, q.clone())?,
        RepSpec::Fundamental => fundamental_rep(n, q.clone())?,
        RepSpec::Classical(m) => classical_rep_in::<F>(n, m)?,
        RepSpec::None => {
            return Err(AlgebraError::InvalidParameter("check takes no representation".into()));
        }
    };
    if perturb {
        // A weight-violating entry in e_12: every relation involving it
        // breaks, whatever the representation.
        Ok(rep.perturbed(1, 2, 0, 0, F::from_ratio(PERTURBATION.0, PERTURBATION.1)))
    } else {
        Ok(rep)
    }
}

fn execute_generic<F: Field>(cfg: &RunConfig, unit: &Unit, draws: &[Draw], rooted: bool) -> Result<Report> {
    let d = &draws[0];
    let val = |s: &Scalar| F::from_scalar(s);
    let n = unit.n;
    let a = unit.a.unwrap_or(0);
    let grad = gradation_of(unit);
    let q: F = val(&d.q)?;
    let (x, y): (F, F) = (val(&d.x)?, val(&d.y)?);
    let rep = || build_rep::<F>(unit.rep, n, &q, cfg.negative_control);
    let bp = || BoundaryParams::new(a, val(&d.eps_plus)?, val(&d.eps_minus)?);
    let rational = || RationalParams::new(val(&d.p)?, a, grad.clone());
    let perturbation = F::one() + F::from_ratio(PERTURBATION.0, PERTURBATION.1);
    let report = match unit.check.name {
        "gl-relations" => check_gl_relations(&rep()?),
        "root-relations" => check_root_relations(&rep()?),
        "recursion-independence" => check_recursion_independence(&rep()?),
        "affine-serre" => {
            let variant = match unit.variant {
                Some("evbar") => Variant::EvBar,
                _ => Variant::Ev,
            };
            check_affine_serre(&evaluate(&rep()?, &grad, &x, variant)?)
        }
        "L-intertwining" => {
            let which = match unit.variant {
                Some("Lbar") => Which::LBar,
                _ => Which::L,
            };
            check_l_intertwining(&rep()?, &grad, &x, &y, which)
        }
        "lbar-transform" => check_trans_lb(&rep()?, &grad, &x),
        "R-consistency" => check_r_consistency(n, &grad, &q, &x),
        "L-weight" => check_weight_zero(&rep()?, &grad),
        "gradation-covariance" => check_gradation_covariance(&rep()?, &grad, &x),
        "yang-baxter" => check_ybe(&grad, &q, &x, &y, &val(&d.z)?),
        "ev-evbar" => check_ev_evbar(&rep()?, &grad, &x),
        "LLbar-product" => {
            let root: Option<F> = if rooted { Some(val(&d.q_root)?) } else { None };
            check_llbar_product(&rep()?, &grad, &x, root.as_ref())
        }
        "reflection-matrix" => check_reflection_matrix(n, &grad, &bp()?, &q, &x, &y),
        "fundamental-kappa" => check_fundamental_kappa(n, &grad, &bp()?, &q, &x),
        "reflection-L" => {
            let (rep, bp) = (rep()?, bp()?);
            if cfg.negative_control {
                let kappa = k_operator(&rep, &grad, &bp, &x)?.perturbed(rep.dim() - 1, &perturbation);
                check_reflection_with(&rep, &grad, &bp, &x, &y, &kappa, "perturbed")
            } else {
                check_reflection_l(&rep, &grad, &bp, &x, &y)
            }
        }
        "negative-control" => {
            let rep = rep()?;
            check_negative_control(&rep, &grad, &bp()?, &x, &y, rep.dim() - 1, &perturbation)
        }
        "kop-branches" => check_kop_branches(&rep()?, &grad, &bp()?, &x),
        "kappa-weight-function" => check_kappa_weight_function(&rep()?, &grad, &bp()?, &x),
        "intertwining" => check_intertwining_suite(&rep()?, &grad, &bp()?, &x),
        "constraints" => check_constraints(&rep()?, a),
        "z-intertwining" => check_z_intertwining(&rep()?, &grad, &bp()?, &x),
        "onsager-relations" => {
            let xs = draws.iter().map(|d| val(&d.x)).collect::<Result<Vec<F>>>()?;
            check_onsager_genericity(&rep()?, &grad, &bp()?, &xs)
        }
        "ladder-consistency" => check_ladder_consistency(&rep()?, &grad, &bp()?, &x),
        "classical-gl" => check_classical_gl(&rep()?),
        "rational-reflection" => {
            let (rep, params) = (rep()?, rational()?);
            let (u, v) = (val(&d.u)?, val(&d.v)?);
            if cfg.negative_control {
                let kappa = rational_k_operator(&rep, &params, &u, RationalForm::Primary)?;
                let mut values = kappa.values.clone();
                let last = values.len() - 1;
                values[last] = values[last].clone() * &perturbation;
                let kappa = qreflect_core::rational::RationalKappa { values, form: kappa.form };
                check_rational_reflection_with(&rep, &params, &u, &v, &kappa, "perturbed")
            } else {
                check_rational_reflection(&rep, &params, &u, &v)
            }
        }
        "rational-intertwining" => check_rational_intertwining(&rep()?, &rational()?, &val(&d.u)?),
        "rational-forms" => check_rational_forms(&rep()?, &rational()?, &val(&d.u)?),
        "rational-conditions" => check_rational_conditions(&rep()?, a),
        other => return Err(AlgebraError::InvalidParameter(format!("no runner for check {other}"))),
    };
    Ok(report)
}

fn execute_float(unit: &Unit, d: &Draw) -> Result<Report> {
    let n = unit.n;
    let a = unit.a.unwrap_or(0);
    let grad = gradation_of(unit);
    let m = match unit.rep {
        RepSpec::Oscillator(m) | RepSpec::Classical(m) => m,
        _ => 1,
    };
    let (u, p) = (d.u.to_complex().re, d.p.to_complex().re);
    let report = match unit.check.name {
        "kop-variants" => {
            let q = d.q.to_complex();
            let rep = oscillator_rep(n, m, q)?;
            let bp = BoundaryParams::new(a, d.eps_plus.to_complex(), d.eps_minus.to_complex())?;
            check_kop_variants(&rep, &grad, &bp, &d.x.to_complex())
        }
        "rational-l-limit" => check_l_limit(n, m, &grad, u, &LIMIT_STEPS),
        "rational-k-matrix-limit" => check_k_matrix_limit(n, &grad, p, a, u, &LIMIT_STEPS),
        "rational-k-operator-limit" => check_k_operator_limit(n, m, &grad, p, a, u, K_LIMIT_STEP),
        "rational-k-operator-convergence" => check_k_operator_convergence(n, m, &grad, p, a, u),
        other => return Err(AlgebraError::InvalidParameter(format!("no float runner for check {other}"))),
    };
    Ok(report)
}

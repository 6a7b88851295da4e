//! Per-identity outcomes and the comparison helper every check uses.

use std::fmt;
use std::time::Instant;

use crate::block::BlockOp;
use crate::error::AlgebraError;
use crate::scalars::{Field, Matrix, Mode};

/// Relative max-norm tolerance for float-mode identities.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Finding => "finding",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Size of `lhs - rhs`, in exact or float terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub mode: Mode,
    /// Exact mode: max |entry| of the difference. Float mode: relative
    /// residual `max|L - R| / (1 + max|L|)`.
    pub value: f64,
    pub exact_zero: bool,
}

impl Residual {
    pub fn zero(mode: Mode) -> Self {
        Residual {
            mode,
            value: 0.0,
            exact_zero: true,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        match self.mode {
            Mode::Exact => self.exact_zero,
            Mode::Float => self.value <= tol,
        }
    }

    pub fn max(self, other: Residual) -> Residual {
        Residual {
            mode: self.mode,
            value: self.value.max(other.value),
            exact_zero: self.exact_zero && other.exact_zero,
        }
    }

    pub fn render(&self) -> String {
        if self.exact_zero {
            "0".to_string()
        } else {
            format!("{:.3e}", self.value)
        }
    }
}

/// Anything that can be compared entrywise against a value of the same shape.
pub trait Comparable<F: Field> {
    fn residual(&self, rhs: &Self, mask: Option<&[bool]>) -> Residual;

    /// Location of the largest discrepancy, if any.
    fn locate(&self, _rhs: &Self, _mask: Option<&[bool]>) -> Option<String> {
        None
    }
}

/// 1-based `(row, col)` and size of the largest nonzero entry of `a - b`.
fn worst_entry<F: Field>(a: &Matrix<F>, b: &Matrix<F>, mask: Option<&[bool]>) -> Option<(usize, usize, f64)> {
    let mut worst: Option<(usize, usize, f64)> = None;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if mask.is_some_and(|m| !m[r] || !m[c]) {
                continue;
            }
            let d = a.get(r, c).clone() - b.get(r, c);
            if d.is_zero() {
                continue;
            }
            let size = d.magnitude();
            if worst.is_none_or(|(_, _, w)| size > w) {
                worst = Some((r + 1, c + 1, size));
            }
        }
    }
    worst
}

fn stats<'a, F: Field>(
    pairs: impl Iterator<Item = (&'a F, &'a F)>,
) -> (f64, f64, bool) {
    let mut max_diff = 0.0f64;
    let mut max_lhs = 0.0f64;
    let mut zero = true;
    for (a, b) in pairs {
        let d = a.clone() - b;
        if !d.is_zero() {
            zero = false;
            max_diff = max_diff.max(d.magnitude());
        }
        max_lhs = max_lhs.max(a.magnitude());
    }
    (max_diff, max_lhs, zero)
}

fn finish<F: Field>(max_diff: f64, max_lhs: f64, zero: bool) -> Residual {
    match F::MODE {
        Mode::Exact => Residual {
            mode: Mode::Exact,
            value: max_diff,
            exact_zero: zero,
        },
        Mode::Float => Residual {
            mode: Mode::Float,
            value: max_diff / (1.0 + max_lhs),
            exact_zero: zero,
        },
    }
}

fn matrix_stats<F: Field>(a: &Matrix<F>, b: &Matrix<F>, mask: Option<&[bool]>) -> (f64, f64, bool) {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()), "residual shape");
    match mask {
        None => stats(a.entries().iter().zip(b.entries())),
        Some(mask) => {
            let (ra, rb) = (a.restrict(mask), b.restrict(mask));
            stats(ra.entries().iter().zip(rb.entries()))
        }
    }
}

impl<F: Field> Comparable<F> for Matrix<F> {
    fn residual(&self, rhs: &Self, mask: Option<&[bool]>) -> Residual {
        let (d, l, z) = matrix_stats(self, rhs, mask);
        finish::<F>(d, l, z)
    }

    fn locate(&self, rhs: &Self, mask: Option<&[bool]>) -> Option<String> {
        worst_entry(self, rhs, mask).map(|(r, c, _)| format!("entry ({r},{c})"))
    }
}

impl<F: Field> Comparable<F> for BlockOp<F> {
    fn residual(&self, rhs: &Self, mask: Option<&[bool]>) -> Residual {
        let (mut d, mut l, mut z) = (0.0f64, 0.0f64, true);
        for (a, b) in self.blocks().iter().zip(rhs.blocks()) {
            let (bd, bl, bz) = matrix_stats(a, b, mask);
            d = d.max(bd);
            l = l.max(bl);
            z &= bz;
        }
        finish::<F>(d, l, z)
    }

    fn locate(&self, rhs: &Self, mask: Option<&[bool]>) -> Option<String> {
        let mut worst: Option<(usize, usize, usize, usize, f64)> = None;
        for k in 1..=self.n() {
            for j in 1..=self.n() {
                if let Some((r, c, size)) = worst_entry(self.block(k, j), rhs.block(k, j), mask) {
                    if worst.is_none_or(|w| size > w.4) {
                        worst = Some((k, j, r, c, size));
                    }
                }
            }
        }
        worst.map(|(k, j, r, c, _)| format!("block ({k},{j}) entry ({r},{c})"))
    }
}

/// Outcome of one identity instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub tag: String,
    pub params: Vec<(String, String)>,
    pub status: Status,
    pub residual: String,
    pub elapsed_ms: f64,
    pub witness: Option<String>,
    pub note: Option<String>,
}

/// An ordered collection of [`CheckReport`]s.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<CheckReport>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// At least one asserted entry passed and none failed. Findings and
    /// skipped entries are informational.
    pub fn all_pass(&self) -> bool {
        self.count(Status::Pass) > 0 && !self.has_failures()
    }

    pub fn has_failures(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn with_tag<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckReport> + 'a {
        self.entries.iter().filter(move |e| e.tag.starts_with(prefix))
    }

    /// Human-readable summary of failing entries, for test assertions.
    pub fn describe_failures(&self) -> String {
        self.failures()
            .take(12)
            .map(|e| {
                format!(
                    "{} [{}] witness={} residual={} {}",
                    e.check,
                    e.tag,
                    e.witness.as_deref().unwrap_or("-"),
                    e.residual,
                    e.note.as_deref().unwrap_or("")
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Whether a relation is claimed (asserted) or only explored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Assert,
    Explore,
}

/// Accumulates [`CheckReport`]s for one check invocation.
pub struct Recorder {
    check: String,
    params: Vec<(String, String)>,
    mask: Option<Vec<bool>>,
    tol: f64,
    expectation: Expectation,
    entries: Vec<CheckReport>,
    mark: Instant,
}

impl Recorder {
    pub fn new(check: impl Into<String>) -> Self {
        Recorder {
            check: check.into(),
            params: Vec::new(),
            mask: None,
            tol: FLOAT_TOL,
            expectation: Expectation::Assert,
            entries: Vec::new(),
            mark: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn with_mask(mut self, mask: Option<Vec<bool>>) -> Self {
        self.mask = mask;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_expectation(mut self, e: Expectation) -> Self {
        self.expectation = e;
        self
    }

    pub fn mask(&self) -> Option<&[bool]> {
        self.mask.as_deref()
    }

    fn elapsed(&mut self) -> f64 {
        let now = Instant::now();
        let ms = now.duration_since(self.mark).as_secs_f64() * 1e3;
        self.mark = now;
        ms
    }

    fn witness(w: &str) -> Option<String> {
        (!w.is_empty()).then(|| w.to_string())
    }

    pub fn record_residual(&mut self, tag: &str, witness: &str, residual: Residual) -> bool {
        let ok = residual.passes(self.tol);
        let status = match (self.expectation, ok) {
            (Expectation::Assert, true) => Status::Pass,
            (Expectation::Assert, false) => Status::Fail,
            (Expectation::Explore, _) => Status::Finding,
        };
        let note = match self.expectation {
            Expectation::Explore => Some(if ok { "holds" } else { "does not hold" }.to_string()),
            Expectation::Assert => None,
        };
        let elapsed_ms = self.elapsed();
        self.entries.push(CheckReport {
            check: self.check.clone(),
            tag: tag.to_string(),
            params: self.params.clone(),
            status,
            residual: residual.render(),
            elapsed_ms,
            witness: Self::witness(witness),
            note,
        });
        ok
    }

    /// Compare two values entrywise and record the outcome.
    pub fn compare<F: Field, T: Comparable<F>>(
        &mut self,
        tag: &str,
        witness: &str,
        lhs: &T,
        rhs: &T,
    ) -> bool {
        let mask = self.mask.as_deref();
        let r = lhs.residual(rhs, mask);
        if witness.is_empty() && !r.passes(self.tol) {
            if let Some(found) = lhs.locate(rhs, mask) {
                return self.record_residual(tag, &found, r);
            }
        }
        self.record_residual(tag, witness, r)
    }

    /// Like [`Recorder::compare`], but always recorded as a finding.
    pub fn explore<F: Field, T: Comparable<F>>(
        &mut self,
        tag: &str,
        witness: &str,
        lhs: &T,
        rhs: &T,
    ) -> bool {
        let saved = std::mem::replace(&mut self.expectation, Expectation::Explore);
        let ok = self.compare(tag, witness, lhs, rhs);
        self.expectation = saved;
        ok
    }

    pub fn zero<F: Field>(&mut self, tag: &str, witness: &str, m: &Matrix<F>) -> bool {
        let z = Matrix::zeros(m.rows(), m.cols());
        self.compare(tag, witness, m, &z)
    }

    pub fn condition(&mut self, tag: &str, witness: &str, ok: bool, note: &str) -> bool {
        let elapsed_ms = self.elapsed();
        let status = match (self.expectation, ok) {
            (Expectation::Assert, true) => Status::Pass,
            (Expectation::Assert, false) => Status::Fail,
            (Expectation::Explore, _) => Status::Finding,
        };
        self.entries.push(CheckReport {
            check: self.check.clone(),
            tag: tag.to_string(),
            params: self.params.clone(),
            status,
            residual: if ok { "0".into() } else { "1".into() },
            elapsed_ms,
            witness: Self::witness(witness),
            note: (!note.is_empty()).then(|| note.to_string()),
        });
        ok
    }

    pub fn error(&mut self, tag: &str, witness: &str, err: &AlgebraError) {
        let elapsed_ms = self.elapsed();
        self.entries.push(CheckReport {
            check: self.check.clone(),
            tag: tag.to_string(),
            params: self.params.clone(),
            status: Status::Fail,
            residual: "nan".into(),
            elapsed_ms,
            witness: Self::witness(witness),
            note: Some(err.to_string()),
        });
    }

    pub fn skip(&mut self, tag: &str, reason: &str) {
        let elapsed_ms = self.elapsed();
        self.entries.push(CheckReport {
            check: self.check.clone(),
            tag: tag.to_string(),
            params: self.params.clone(),
            status: Status::Skipped,
            residual: "0".into(),
            elapsed_ms,
            witness: None,
            note: Some(reason.to_string()),
        });
    }

    /// Attach a note to the most recent entry.
    pub fn annotate_last(&mut self, note: &str) {
        if let Some(e) = self.entries.last_mut() {
            e.note = Some(match e.note.take() {
                Some(prev) => format!("{prev}; {note}"),
                None => note.to_string(),
            });
        }
    }

    pub fn finish(self) -> Report {
        Report {
            entries: self.entries,
        }
    }
}

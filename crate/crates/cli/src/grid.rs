//! Expansion of a [`RunConfig`] into the Cartesian grid of check units.

use std::fmt;

use qreflect_core::affine::Gradation;

use crate::catalog::{CheckDef, Draws, RepAxis, SplitAxis};
use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepSpec {
    None,
    Oscillator(i64),
    Fundamental,
    Classical(i64),
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepSpec::None => f.write_str("-"),
            RepSpec::Oscillator(m) => write!(f, "oscillator(m={m})"),
            RepSpec::Fundamental => f.write_str("fundamental"),
            RepSpec::Classical(m) => write!(f, "classical(m={m})"),
        }
    }
}

/// One point of the grid: a check with every axis fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct Unit {
    pub check: &'static CheckDef,
    pub n: usize,
    pub rep: RepSpec,
    pub a: Option<usize>,
    pub grad: Option<Gradation>,
    pub variant: Option<&'static str>,
    /// Repetition index; `None` for pooled checks, which see every draw.
    pub draw: Option<usize>,
}

impl Unit {
    /// Stable identity used to derive the unit's random stream.
    pub fn key(&self) -> String {
        let mut key = format!("{}|N={}|rep={}", self.check.name, self.n, self.rep);
        if let Some(a) = self.a {
            key.push_str(&format!("|a={a}"));
        }
        if let Some(g) = &self.grad {
            key.push_str(&format!("|grad={g}"));
        }
        if let Some(v) = self.variant {
            key.push_str(&format!("|variant={v}"));
        }
        if let Some(d) = self.draw {
            key.push_str(&format!("|draw={d}"));
        }
        key
    }

    /// Ordered axis echo for reports.
    pub fn params(&self) -> Vec<(String, String)> {
        let mut out = vec![("N".to_string(), self.n.to_string())];
        if self.rep != RepSpec::None {
            out.push(("rep".into(), self.rep.to_string()));
        }
        if let Some(a) = self.a {
            out.push(("a".into(), a.to_string()));
        }
        if let Some(g) = &self.grad {
            out.push(("grad".into(), g.to_string()));
        }
        if let Some(v) = self.variant {
            out.push(("variant".into(), v.to_string()));
        }
        if let Some(d) = self.draw {
            out.push(("draw".into(), d.to_string()));
        }
        out
    }
}

fn reps_for(check: &CheckDef, cfg: &RunConfig) -> Vec<RepSpec> {
    match check.reps {
        RepAxis::None => vec![RepSpec::None],
        RepAxis::Quantum { fundamental } => {
            let mut v: Vec<RepSpec> = cfg.weights.iter().map(|&m| RepSpec::Oscillator(m)).collect();
            if fundamental {
                v.push(RepSpec::Fundamental);
            }
            v
        }
        RepAxis::Classical => cfg.weights.iter().map(|&m| RepSpec::Classical(m)).collect(),
    }
}

fn splits_for(check: &CheckDef, cfg: &RunConfig, n: usize) -> Vec<Option<usize>> {
    match check.split {
        SplitAxis::None => vec![None],
        SplitAxis::Closed => cfg.splits_for(n).into_iter().map(Some).collect(),
        SplitAxis::Interior => cfg
            .splits_for(n)
            .into_iter()
            .filter(|&a| a >= 1 && a < n)
            .map(Some)
            .collect(),
    }
}

fn grads_for(check: &CheckDef, cfg: &RunConfig, n: usize) -> Vec<Option<Gradation>> {
    if !check.graded {
        return vec![None];
    }
    cfg.gradations.iter().filter_map(|g| g.resolve(n)).map(Some).collect()
}

/// Every unit of the run, in deterministic order.
pub fn expand(cfg: &RunConfig) -> Vec<Unit> {
    let mut out = Vec::new();
    for &check in &cfg.checks {
        let variants: Vec<Option<&'static str>> = if check.variants.is_empty() {
            vec![None]
        } else {
            check.variants.iter().copied().map(Some).collect()
        };
        let draws: Vec<Option<usize>> = match check.draws {
            Draws::PerRepetition => (0..cfg.repetitions).map(Some).collect(),
            Draws::Pooled => vec![None],
        };
        for &n in &cfg.ranks {
            for rep in reps_for(check, cfg) {
                for a in splits_for(check, cfg, n) {
                    for grad in grads_for(check, cfg, n) {
                        for &variant in &variants {
                            for &draw in &draws {
                                out.push(Unit {
                                    check,
                                    n,
                                    rep,
                                    a,
                                    grad: grad.clone(),
                                    variant,
                                    draw,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

use std::fmt;

use crate::error::{AlgebraError, Result};

/// Integer gradation `(s_1, ..., s_N)` with partial sums
/// `xi_k = s_k + ... + s_N` and total `s = xi_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gradation {
    s: Vec<i64>,
    xi: Vec<i64>,
}

impl Gradation {
    /// A gradation with strictly positive entries.
    pub fn new(s: Vec<i64>) -> Result<Self> {
        if let Some(bad) = s.iter().find(|&&v| v <= 0) {
            return Err(AlgebraError::InvalidParameter(format!(
                "gradation entries must be positive, got {bad}"
            )));
        }
        Self::signed(s)
    }

    /// A gradation with arbitrary integer entries, as produced by the
    /// index-reversal automorphism. The total `s` must be nonzero.
    pub fn signed(s: Vec<i64>) -> Result<Self> {
        if s.len() < 2 {
            return Err(AlgebraError::InvalidRank(s.len()));
        }
        let mut xi = vec![0; s.len()];
        let mut acc = 0;
        for k in (0..s.len()).rev() {
            acc += s[k];
            xi[k] = acc;
        }
        if acc == 0 {
            return Err(AlgebraError::InvalidParameter(
                "gradation total s must be nonzero".into(),
            ));
        }
        Ok(Gradation { s, xi })
    }

    /// `s = (1, ..., 1)`.
    pub fn principal(n: usize) -> Self {
        Self::new(vec![1; n]).expect("principal gradation is valid for N >= 2")
    }

    pub fn rank(&self) -> usize {
        self.s.len()
    }

    /// `s_k` (1-based).
    pub fn s_k(&self, k: usize) -> i64 {
        self.s[k - 1]
    }

    /// `xi_k` (1-based).
    pub fn xi(&self, k: usize) -> i64 {
        self.xi[k - 1]
    }

    pub fn xis(&self) -> &[i64] {
        &self.xi
    }

    pub fn entries(&self) -> &[i64] {
        &self.s
    }

    /// Total `s = xi_1`.
    pub fn total(&self) -> i64 {
        self.xi[0]
    }

    /// Image under `s_l -> -s_{N-l}` (`l < N`), `s_N -> -s_N`.
    pub fn reversed(&self) -> Gradation {
        let n = self.rank();
        let mut s = vec![0; n];
        for l in 1..n {
            s[l - 1] = -self.s[n - l - 1];
        }
        s[n - 1] = -self.s[n - 1];
        Self::signed(s).expect("reversal preserves a nonzero total")
    }
}

impl fmt::Display for Gradation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.s.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

//! The registry of runnable checks: which suite each belongs to, which grid
//! axes it spans and which drawn parameters it consumes.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Glrep,
    Affine,
    Reflection,
    Onsager,
    Rational,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Glrep,
        Suite::Affine,
        Suite::Reflection,
        Suite::Onsager,
        Suite::Rational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Glrep => "glrep",
            Suite::Affine => "affine",
            Suite::Reflection => "reflection",
            Suite::Onsager => "onsager",
            Suite::Rational => "rational",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which representations a check is swept over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepAxis {
    /// The check takes only the rank.
    None,
    /// q-oscillator representations for every `m`, plus the fundamental
    /// representation when `fundamental` is set.
    Quantum { fundamental: bool },
    /// Classical `gl(N)` representations for every `m`.
    Classical,
}

/// Which splitting indices a check is swept over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitAxis {
    None,
    /// `0 <= a <= N`.
    Closed,
    /// `1 <= a <= N - 1`.
    Interior,
}

/// How random draws map onto grid units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Draws {
    /// One unit per repetition, each with its own draw.
    PerRepetition,
    /// One unit that receives all repetitions' draws at once.
    Pooled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSupport {
    Both,
    FloatOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckDef {
    pub name: &'static str,
    pub suite: Suite,
    pub summary: &'static str,
    pub modes: ModeSupport,
    pub reps: RepAxis,
    pub split: SplitAxis,
    pub graded: bool,
    pub variants: &'static [&'static str],
    pub draws: Draws,
    /// Drawn parameters consumed, in echo order.
    pub uses: &'static [&'static str],
}

const fn def(name: &'static str, suite: Suite, summary: &'static str) -> CheckDef {
    CheckDef {
        name,
        suite,
        summary,
        modes: ModeSupport::Both,
        reps: RepAxis::Quantum { fundamental: true },
        split: SplitAxis::None,
        graded: true,
        variants: &[],
        draws: Draws::PerRepetition,
        uses: &["q"],
    }
}

impl CheckDef {
    const fn modes(mut self, modes: ModeSupport) -> Self {
        self.modes = modes;
        self
    }

    const fn reps(mut self, reps: RepAxis) -> Self {
        self.reps = reps;
        self
    }

    const fn split(mut self, split: SplitAxis) -> Self {
        self.split = split;
        self
    }

    const fn ungraded(mut self) -> Self {
        self.graded = false;
        self
    }

    const fn variants(mut self, variants: &'static [&'static str]) -> Self {
        self.variants = variants;
        self
    }

    const fn pooled(mut self) -> Self {
        self.draws = Draws::Pooled;
        self
    }

    const fn uses(mut self, uses: &'static [&'static str]) -> Self {
        self.uses = uses;
        self
    }

    pub fn float_only(&self) -> bool {
        self.modes == ModeSupport::FloatOnly
    }
}

const OSC: RepAxis = RepAxis::Quantum { fundamental: false };
const BOUNDARY: &[&str] = &["q", "x", "y", "eps_plus", "eps_minus"];

pub static CATALOG: &[CheckDef] = &[
    def("gl-relations", Suite::Glrep, "defining relations of U_q(gl(N))").ungraded(),
    def("root-relations", Suite::Glrep, "non-simple root vector relations").ungraded(),
    def("recursion-independence", Suite::Glrep, "root vectors independent of the recursion path").ungraded(),
    def("affine-serre", Suite::Affine, "affine Chevalley relations of the evaluation maps")
        .variants(&["ev", "evbar"])
        .uses(&["q", "x"]),
    def("L-intertwining", Suite::Affine, "L and Lbar intertwine the coproducts")
        .variants(&["L", "Lbar"])
        .uses(&["q", "x", "y"]),
    def("lbar-transform", Suite::Affine, "index reversal maps L to Lbar").uses(&["q", "x"]),
    def("R-consistency", Suite::Affine, "L and Lbar on the fundamental rep equal R and Rbar")
        .reps(RepAxis::None)
        .uses(&["q", "x"]),
    def("L-weight", Suite::Affine, "L-operator blocks carry zero total weight"),
    def("gradation-covariance", Suite::Affine, "gradation change is a similarity plus rescaling").uses(&["q", "x"]),
    def("yang-baxter", Suite::Affine, "ratio-form Yang-Baxter equation (asserted at principal gradation)")
        .reps(RepAxis::None)
        .uses(&["q", "x", "y", "z"]),
    def("ev-evbar", Suite::Affine, "the two evaluation maps are related through the boundary weights").uses(&["q", "x"]),
    def("LLbar-product", Suite::Affine, "product of L and shifted Lbar, with the central scalar G_i")
        .reps(OSC)
        .uses(&["q_root", "q", "x"]),
    def("reflection-matrix", Suite::Reflection, "matrix reflection equation for the K-matrix")
        .reps(RepAxis::None)
        .split(SplitAxis::Closed)
        .uses(BOUNDARY),
    def("fundamental-kappa", Suite::Reflection, "K-operator on the fundamental rep is the K-matrix")
        .reps(RepAxis::None)
        .split(SplitAxis::Closed)
        .uses(&["q", "x", "eps_plus", "eps_minus"]),
    def("reflection-L", Suite::Reflection, "operator reflection equation for the diagonal K-operator")
        .split(SplitAxis::Closed)
        .uses(BOUNDARY),
    def("negative-control", Suite::Reflection, "a perturbed K-operator violates the reflection equation")
        .split(SplitAxis::Closed)
        .uses(BOUNDARY),
    def("kop-branches", Suite::Reflection, "the two normalized K-operator branches agree")
        .split(SplitAxis::Closed)
        .uses(&["q", "x", "eps_plus", "eps_minus"]),
    def("kappa-weight-function", Suite::Reflection, "K-operator eigenvalues depend only on the weight")
        .split(SplitAxis::Closed)
        .uses(&["q", "x", "eps_plus", "eps_minus"]),
    def("intertwining", Suite::Reflection, "intertwining relations implied by the reflection equation")
        .split(SplitAxis::Closed)
        .uses(&["q", "x", "eps_plus", "eps_minus"]),
    def("constraints", Suite::Reflection, "representation constraints behind the diagonal solution")
        .split(SplitAxis::Closed)
        .ungraded(),
    def("kop-variants", Suite::Reflection, "literal infinite-product K-operators match the normalized one")
        .modes(ModeSupport::FloatOnly)
        .reps(OSC)
        .split(SplitAxis::Closed)
        .uses(&["q", "x", "eps_plus", "eps_minus"]),
    def("z-intertwining", Suite::Onsager, "Z elements intertwine the K-operator between the evaluation maps")
        .split(SplitAxis::Interior)
        .uses(&["q", "x", "eps_plus", "eps_minus"]),
    def("onsager-relations", Suite::Onsager, "commutation relations of the Z elements, stable across draws")
        .split(SplitAxis::Interior)
        .pooled()
        .uses(&["q", "x", "eps_plus", "eps_minus"]),
    def("ladder-consistency", Suite::Onsager, "Z elements regenerate from the ladder relations")
        .split(SplitAxis::Interior)
        .uses(&["q", "x", "eps_plus", "eps_minus"]),
    def("classical-gl", Suite::Rational, "classical realization satisfies the gl(N) relations")
        .reps(RepAxis::Classical)
        .ungraded()
        .uses(&[]),
    def("rational-reflection", Suite::Rational, "rational reflection equation for both gamma-ratio forms")
        .reps(RepAxis::Classical)
        .split(SplitAxis::Closed)
        .uses(&["p", "u", "v"]),
    def("rational-intertwining", Suite::Rational, "intertwining relations of the rational K-operator")
        .reps(RepAxis::Classical)
        .split(SplitAxis::Closed)
        .uses(&["p", "u"]),
    def("rational-forms", Suite::Rational, "the two rational forms are proportional; fundamental case")
        .reps(RepAxis::Classical)
        .split(SplitAxis::Closed)
        .uses(&["p", "u"]),
    def("rational-conditions", Suite::Rational, "sufficient and rectangular representation conditions")
        .reps(RepAxis::Classical)
        .split(SplitAxis::Closed)
        .ungraded()
        .uses(&[]),
    def("rational-l-limit", Suite::Rational, "renormalized L and Lbar approach their rational limits")
        .modes(ModeSupport::FloatOnly)
        .reps(RepAxis::Classical)
        .uses(&["u"]),
    def("rational-k-matrix-limit", Suite::Rational, "renormalized K-matrix approaches the rational K-matrix")
        .modes(ModeSupport::FloatOnly)
        .reps(RepAxis::None)
        .split(SplitAxis::Closed)
        .uses(&["p", "u"]),
    def("rational-k-operator-limit", Suite::Rational, "literal K-operators at q = 1 +- 1e-4 match the rational one")
        .modes(ModeSupport::FloatOnly)
        .reps(RepAxis::Classical)
        .split(SplitAxis::Closed)
        .uses(&["p", "u"]),
    def("rational-k-operator-convergence", Suite::Rational, "first-order convergence of the literal K-operators")
        .modes(ModeSupport::FloatOnly)
        .reps(RepAxis::Classical)
        .split(SplitAxis::Closed)
        .uses(&["p", "u"]),
];

pub fn lookup(name: &str) -> Option<&'static CheckDef> {
    CATALOG.iter().find(|c| c.name == name)
}

pub fn suite_checks(suite: Suite) -> impl Iterator<Item = &'static CheckDef> {
    CATALOG.iter().filter(move |c| c.suite == suite)
}

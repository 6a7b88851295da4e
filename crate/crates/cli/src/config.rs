//! Run configuration: command-line flags layered over an optional
//! `key = value` file with `[section]` headers.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::Args;
use thiserror::Error;

use qreflect_core::affine::Gradation;
use qreflect_core::scalars::{Mode, Scalar};

use crate::catalog::{self, CheckDef, Suite};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("malformed value {value:?} for {key}")]
    Malformed { key: String, value: String },
    #[error("{key} = {value:?} is a decimal, but exact mode requires a rational")]
    ModeMismatch { key: String, value: String },
    #[error("unknown suite or check {0:?} (see `qreflect list-suites`)")]
    UnknownSuite(String),
    #[error("check {0:?} runs in float mode only")]
    FloatOnly(String),
    #[error("unknown configuration key {key:?} in section [{section}]")]
    UnknownKey { section: String, key: String },
    #[error("unknown configuration section [{0}]")]
    UnknownSection(String),
    #[error("config line {line}: expected `key = value`, found {text:?}")]
    Syntax { line: usize, text: String },
    #[error("cannot read config file {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("invalid command line: {0}")]
    Cli(String),
}

/// A parameter that is either fixed or drawn per grid unit.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamSpec {
    Random,
    Value(Scalar),
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamSpec::Random => f.write_str("random"),
            ParamSpec::Value(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradSpec {
    Principal,
    /// The pattern `(2, 1, 1, 3, 2, 1, ...)` truncated to the rank.
    Mixed,
    Explicit(Vec<i64>),
}

impl GradSpec {
    /// The gradation for rank `n`, or `None` when an explicit vector has a
    /// different length.
    pub fn resolve(&self, n: usize) -> Option<Gradation> {
        match self {
            GradSpec::Principal => Some(Gradation::principal(n)),
            GradSpec::Mixed => Gradation::new((0..n).map(|k| [2, 1, 1, 3][k % 4]).collect()).ok(),
            GradSpec::Explicit(s) if s.len() == n => Gradation::new(s.clone()).ok(),
            GradSpec::Explicit(_) => None,
        }
    }
}

impl fmt::Display for GradSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradSpec::Principal => f.write_str("principal"),
            GradSpec::Mixed => f.write_str("mixed"),
            GradSpec::Explicit(s) => {
                let parts: Vec<String> = s.iter().map(i64::to_string).collect();
                f.write_str(&parts.join(":"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitSpec {
    All,
    List(Vec<usize>),
}

impl fmt::Display for SplitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitSpec::All => f.write_str("all"),
            SplitSpec::List(v) => f.write_str(&join(v)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// The selector as given, e.g. `all` or `reflection,classical-gl`.
    pub suite: String,
    /// Resolved checks in catalog order.
    pub checks: Vec<&'static CheckDef>,
    pub ranks: Vec<usize>,
    pub weights: Vec<i64>,
    pub splits: SplitSpec,
    pub gradations: Vec<GradSpec>,
    pub q: ParamSpec,
    pub q_root: ParamSpec,
    pub x: ParamSpec,
    pub y: ParamSpec,
    pub u: ParamSpec,
    pub v: ParamSpec,
    pub eps_plus: ParamSpec,
    pub eps_minus: ParamSpec,
    pub p: ParamSpec,
    pub mode: Mode,
    pub seed: u64,
    pub repetitions: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub negative_control: bool,
}

impl RunConfig {
    /// Splitting indices for rank `n`, before per-check filtering.
    pub fn splits_for(&self, n: usize) -> Vec<usize> {
        match &self.splits {
            SplitSpec::All => (0..=n).collect(),
            SplitSpec::List(v) => v.iter().copied().filter(|&a| a <= n).collect(),
        }
    }

    /// Ordered `(key, value)` echo of every setting that affects results.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let grads: Vec<String> = self.gradations.iter().map(GradSpec::to_string).collect();
        vec![
            ("suite", self.suite.clone()),
            ("N", join(&self.ranks)),
            ("m", join(&self.weights)),
            ("a", self.splits.to_string()),
            ("gradation", grads.join(",")),
            ("q", self.q.to_string()),
            ("q_root", self.q_root.to_string()),
            ("x", self.x.to_string()),
            ("y", self.y.to_string()),
            ("u", self.u.to_string()),
            ("v", self.v.to_string()),
            ("eps_plus", self.eps_plus.to_string()),
            ("eps_minus", self.eps_minus.to_string()),
            ("p", self.p.to_string()),
            ("mode", self.mode.to_string()),
            ("seed", self.seed.to_string()),
            ("repetitions", self.repetitions.to_string()),
            ("negative_control", self.negative_control.to_string()),
        ]
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Flags of the `verify` subcommand. Every flag is optional so that values
/// missing on the command line can fall back to the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// Config file of `key = value` lines under [run], [grid], [params] and
    /// [output] headers; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `all`, a suite name, a check name, or a comma-separated list of them.
    #[arg(long, allow_hyphen_values = true)]
    pub suite: Option<String>,
    /// Ranks N, comma-separated (default 2,3).
    #[arg(long = "N", allow_hyphen_values = true)]
    pub ranks: Option<String>,
    /// Highest weights m of the oscillator and classical reps (default 0,1,2).
    #[arg(long = "m", allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Splitting indices a, comma-separated, or `all` for 0..=N (default all).
    #[arg(long = "a", allow_hyphen_values = true)]
    pub splits: Option<String>,
    /// Gradations: comma-separated items `principal`, `mixed` or an explicit
    /// vector `s1:s2:...:sN` (default principal).
    #[arg(long, allow_hyphen_values = true)]
    pub gradation: Option<String>,
    /// Deformation parameter. Random draws use ±p/r with 2 <= p, r <= 7, p != r.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Root with q = q_root^s, needed by the exact shifted-product check.
    #[arg(long, allow_hyphen_values = true)]
    pub q_root: Option<String>,
    /// Spectral parameters. Random draws are nonzero rationals with
    /// |num|, |den| <= 5, redrawn on collisions.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Additive spectral parameters of the rational suite.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Boundary coefficients of the K-matrix.
    #[arg(long, allow_hyphen_values = true)]
    pub eps_plus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps_minus: Option<String>,
    /// Free boundary parameter of the rational suite.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// `exact` (rational arithmetic) or `float` (complex doubles).
    #[arg(long, allow_hyphen_values = true)]
    pub mode: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    /// Independent random draws per grid point (default 3).
    #[arg(long, allow_hyphen_values = true)]
    pub repetitions: Option<String>,
    /// `json` or `text` (default text).
    #[arg(long, allow_hyphen_values = true)]
    pub format: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Perturb every constructed representation and K-operator; the run
    /// must then report failures.
    #[arg(long)]
    pub negative_control: bool,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("run", &["suite", "mode", "seed", "repetitions", "negative_control"]),
    ("grid", &["N", "m", "a", "gradation"]),
    (
        "params",
        &["q", "q_root", "x", "y", "u", "v", "eps_plus", "eps_minus", "p"],
    ),
    ("output", &["format", "output"]),
];

/// Parse the contents of a config file into `key -> value`.
///
/// Keys before the first header may belong to any section.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    let mut section: Option<&'static [&'static str]> = None;
    let mut section_name = String::from("top level");
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim();
            let keys = SECTIONS
                .iter()
                .find(|(s, _)| *s == name)
                .map(|(_, k)| *k)
                .ok_or_else(|| ConfigError::UnknownSection(name.to_string()))?;
            section = Some(keys);
            section_name = name.to_string();
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: idx + 1,
            text: raw.to_string(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let known = match section {
            Some(keys) => keys.contains(&key),
            None => SECTIONS.iter().any(|(_, keys)| keys.contains(&key)),
        };
        if !known {
            return Err(ConfigError::UnknownKey {
                section: section_name,
                key: key.to_string(),
            });
        }
        out.insert(key.to_string(), value.to_string());
    }
    Ok(out)
}

/// Parse `verify` arguments (without the program and subcommand names) and
/// merge them over the config file named by `--config`, if any.
pub fn parse_config<I, S>(argv: I) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    use clap::{FromArgMatches, Parser};

    #[derive(Parser)]
    #[command(name = "verify", no_binary_name = true)]
    struct Wrapper {
        #[command(flatten)]
        args: VerifyArgs,
    }
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let matches = <Wrapper as clap::CommandFactory>::command()
        .try_get_matches_from(argv)
        .map_err(|e| ConfigError::Cli(e.to_string().trim().to_string()))?;
    let wrapper = Wrapper::from_arg_matches(&matches).map_err(|e| ConfigError::Cli(e.to_string()))?;
    resolve(&wrapper.args)
}

/// Merge flags over the config file and validate.
pub fn resolve(args: &VerifyArgs) -> Result<RunConfig, ConfigError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };
    let pick = |flag: &Option<String>, key: &str, default: &str| -> String {
        flag.clone()
            .or_else(|| file.get(key).cloned())
            .unwrap_or_else(|| default.to_string())
    };

    let mode = match pick(&args.mode, "mode", "exact").as_str() {
        "exact" => Mode::Exact,
        "float" => Mode::Float,
        other => return Err(malformed("mode", other)),
    };
    let suite = pick(&args.suite, "suite", "all");
    let checks = select_checks(&suite, mode)?;
    let ranks = parse_list(&pick(&args.ranks, "N", "2,3"), "N", |n: usize| n >= 2)?;
    let weights = parse_list(&pick(&args.weights, "m", "0,1,2"), "m", |m: i64| m >= 0)?;
    let splits = match pick(&args.splits, "a", "all").as_str() {
        "all" => SplitSpec::All,
        other => SplitSpec::List(parse_list(other, "a", |_: usize| true)?),
    };
    let gradations = parse_gradations(&pick(&args.gradation, "gradation", "principal"))?;
    let param = |flag: &Option<String>, key: &str| parse_param(&pick(flag, key, "random"), key, mode);
    let seed_text = pick(&args.seed, "seed", "0");
    let seed = seed_text.parse::<u64>().map_err(|_| malformed("seed", &seed_text))?;
    let reps_text = pick(&args.repetitions, "repetitions", "3");
    let repetitions = match reps_text.parse::<usize>() {
        Ok(r) if r >= 1 => r,
        _ => return Err(malformed("repetitions", &reps_text)),
    };
    let format = match pick(&args.format, "format", "text").as_str() {
        "json" => Format::Json,
        "text" => Format::Text,
        other => return Err(malformed("format", other)),
    };
    let output = args
        .output
        .clone()
        .or_else(|| file.get("output").map(PathBuf::from));
    let negative_control = args.negative_control
        || match file.get("negative_control").map(String::as_str) {
            None | Some("false") => false,
            Some("true") => true,
            Some(other) => return Err(malformed("negative_control", other)),
        };

    Ok(RunConfig {
        suite,
        checks,
        ranks,
        weights,
        splits,
        gradations,
        q: param(&args.q, "q")?,
        q_root: param(&args.q_root, "q_root")?,
        x: param(&args.x, "x")?,
        y: param(&args.y, "y")?,
        u: param(&args.u, "u")?,
        v: param(&args.v, "v")?,
        eps_plus: param(&args.eps_plus, "eps_plus")?,
        eps_minus: param(&args.eps_minus, "eps_minus")?,
        p: param(&args.p, "p")?,
        mode,
        seed,
        repetitions,
        format,
        output,
        negative_control,
    })
}

fn malformed(key: &str, value: &str) -> ConfigError {
    ConfigError::Malformed {
        key: key.to_string(),
        value: value.to_string(),
    }
}

/// Resolve a suite selector into catalog entries, in catalog order.
///
/// Float-only checks are dropped from whole-suite selections in exact mode
/// but rejected when named explicitly.
pub fn select_checks(selector: &str, mode: Mode) -> Result<Vec<&'static CheckDef>, ConfigError> {
    let mut chosen = vec![false; catalog::CATALOG.len()];
    for item in selector.split(',').map(str::trim) {
        let in_mode = |c: &CheckDef| mode == Mode::Float || !c.float_only();
        if item == "all" {
            for (flag, c) in chosen.iter_mut().zip(catalog::CATALOG) {
                *flag |= in_mode(c);
            }
        } else if let Some(suite) = Suite::from_name(item) {
            for (flag, c) in chosen.iter_mut().zip(catalog::CATALOG) {
                *flag |= c.suite == suite && in_mode(c);
            }
        } else if let Some(idx) = catalog::CATALOG.iter().position(|c| c.name == item) {
            if !in_mode(&catalog::CATALOG[idx]) {
                return Err(ConfigError::FloatOnly(item.to_string()));
            }
            chosen[idx] = true;
        } else {
            return Err(ConfigError::UnknownSuite(item.to_string()));
        }
    }
    Ok(catalog::CATALOG
        .iter()
        .zip(chosen)
        .filter_map(|(c, keep)| keep.then_some(c))
        .collect())
}

fn parse_list<T: std::str::FromStr + Ord + Copy>(
    text: &str,
    key: &str,
    valid: impl Fn(T) -> bool,
) -> Result<Vec<T>, ConfigError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        match item.parse::<T>() {
            Ok(v) if valid(v) => {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
            _ => return Err(malformed(key, text)),
        }
    }
    Ok(out)
}

fn parse_gradations(text: &str) -> Result<Vec<GradSpec>, ConfigError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let spec = match item {
            "principal" => GradSpec::Principal,
            "mixed" => GradSpec::Mixed,
            other => {
                let s: Vec<i64> = other
                    .split(':')
                    .map(|p| p.trim().parse::<i64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| malformed("gradation", text))?;
                Gradation::new(s.clone()).map_err(|_| malformed("gradation", text))?;
                GradSpec::Explicit(s)
            }
        };
        if !out.contains(&spec) {
            out.push(spec);
        }
    }
    Ok(out)
}

/// Parse a scalar parameter. Rationals are accepted in both modes (and
/// promoted in float mode); decimals only in float mode.
pub fn parse_param(text: &str, key: &str, mode: Mode) -> Result<ParamSpec, ConfigError> {
    if text == "random" {
        return Ok(ParamSpec::Random);
    }
    let value: Scalar = text.parse().map_err(|_| malformed(key, text))?;
    match (mode, value.mode()) {
        (Mode::Exact, Mode::Float) => Err(ConfigError::ModeMismatch {
            key: key.to_string(),
            value: text.to_string(),
        }),
        (Mode::Float, Mode::Exact) => Ok(ParamSpec::Value(value.promote())),
        _ => Ok(ParamSpec::Value(value)),
    }
}

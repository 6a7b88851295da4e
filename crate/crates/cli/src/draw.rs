//! Seeded parameter draws with redraw-on-collision.
//!
//! Every grid unit owns a ChaCha8 stream derived from the run seed and the
//! unit's key, so draws do not depend on execution order or on which other
//! units are in the run.

use num_complex::Complex64;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qreflect_core::scalars::Scalar;

use crate::config::{ParamSpec, RunConfig};
use crate::grid::Unit;

/// Redraw attempts before a colliding draw is accepted as is.
pub const MAX_REDRAWS: usize = 64;

const KEYS: [&str; 10] = ["q", "q_root", "x", "y", "z", "u", "v", "eps_plus", "eps_minus", "p"];

/// One complete set of parameter values for a unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Draw {
    pub q: Scalar,
    pub q_root: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
    pub u: Scalar,
    pub v: Scalar,
    pub eps_plus: Scalar,
    pub eps_minus: Scalar,
    pub p: Scalar,
    /// Number of rejected draws before this one.
    pub redraws: usize,
}

impl Draw {
    pub fn get(&self, key: &str) -> &Scalar {
        match key {
            "q" => &self.q,
            "q_root" => &self.q_root,
            "x" => &self.x,
            "y" => &self.y,
            "z" => &self.z,
            "u" => &self.u,
            "v" => &self.v,
            "eps_plus" => &self.eps_plus,
            "eps_minus" => &self.eps_minus,
            "p" => &self.p,
            _ => panic!("unknown draw key {key}"),
        }
    }
}

/// Deformation parameters `±p/r` with `2 <= p, r <= 7`, `p != r`, reduced
/// and deduplicated.
pub fn q_pool() -> Vec<(i64, i64)> {
    pool(|| {
        let mut v = Vec::new();
        for p in 2..=7i64 {
            for r in 2..=7i64 {
                if p != r {
                    v.push(Ratio::new(p, r));
                    v.push(Ratio::new(-p, r));
                }
            }
        }
        v
    })
}

/// Nonzero rationals with `|num|, |den| <= 5`, reduced and deduplicated.
pub fn spectral_pool() -> Vec<(i64, i64)> {
    pool(|| {
        let mut v = Vec::new();
        for num in -5..=5i64 {
            for den in 1..=5i64 {
                if num != 0 {
                    v.push(Ratio::new(num, den));
                }
            }
        }
        v
    })
}

fn pool(make: impl Fn() -> Vec<Ratio<i64>>) -> Vec<(i64, i64)> {
    let mut v = make();
    v.sort();
    v.dedup();
    v.into_iter().map(|r| (*r.numer(), *r.denom())).collect()
}

fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The random stream of one unit.
pub fn unit_rng(seed: u64, unit: &Unit) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.rotate_left(29) ^ fnv1a(&unit.key()))
}

fn spec<'a>(cfg: &'a RunConfig, key: &str) -> Option<&'a ParamSpec> {
    match key {
        "q" => Some(&cfg.q),
        "q_root" => Some(&cfg.q_root),
        "x" => Some(&cfg.x),
        "y" => Some(&cfg.y),
        "u" => Some(&cfg.u),
        "v" => Some(&cfg.v),
        "eps_plus" => Some(&cfg.eps_plus),
        "eps_minus" => Some(&cfg.eps_minus),
        "p" => Some(&cfg.p),
        _ => None,
    }
}

fn sample_once(cfg: &RunConfig, rng: &mut ChaCha8Rng, qs: &[(i64, i64)], xs: &[(i64, i64)]) -> Draw {
    let mut vals = KEYS.map(|key| {
        let pool = if key == "q" || key == "q_root" { qs } else { xs };
        // Always consume the stream, so the draw of one key does not depend
        // on whether another key is fixed.
        let &(n, d) = pool.choose(rng).expect("nonempty pool");
        match spec(cfg, key) {
            Some(ParamSpec::Value(s)) => s.clone(),
            _ => Scalar::rational(n, d),
        }
    })
    .into_iter();
    let mut next = || vals.next().expect("ten keys");
    Draw {
        q: next(),
        q_root: next(),
        x: next(),
        y: next(),
        z: next(),
        u: next(),
        v: next(),
        eps_plus: next(),
        eps_minus: next(),
        p: next(),
        redraws: 0,
    }
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + a.norm().max(b.norm()))
}

fn near_integer(z: Complex64) -> bool {
    z.im.abs() <= 1e-12 && (z.re - z.re.round()).abs() <= 1e-12
}

/// Whether `draw` hits a degenerate configuration for a check using `uses`
/// at gradation total `s`.
pub fn collides(draw: &Draw, uses: &[&str], s: i64) -> bool {
    let c = |k: &str| draw.get(k).to_complex();
    let one = Complex64::new(1.0, 0.0);
    let spectral: Vec<Complex64> = ["x", "y", "z"].iter().filter(|k| uses.contains(k)).map(|k| c(k)).collect();
    for (i, &a) in spectral.iter().enumerate() {
        if close(a, one) || close(a, -one) {
            return true;
        }
        for &b in &spectral[..i] {
            if close(a, b) || close(a, -b) || close(a * b, one) || close(a * b, -one) {
                return true;
            }
        }
    }
    if uses.contains(&"u") {
        let sc = Complex64::new(s as f64, 0.0);
        let p = c("p");
        let mut additive = vec![c("u")];
        if uses.contains(&"v") {
            let (u, v) = (c("u"), c("v"));
            if close(u, v) || close(u, -v) {
                return true;
            }
            additive.push(v);
        }
        if additive.iter().any(|&w| near_integer(sc * w + p) || near_integer(sc * w - p)) {
            return true;
        }
    }
    false
}

/// Draw parameters for a unit, redrawing random values while they collide.
pub fn sample(cfg: &RunConfig, rng: &mut ChaCha8Rng, uses: &[&str], s: i64) -> Draw {
    let (qs, xs) = (q_pool(), spectral_pool());
    let mut draw = sample_once(cfg, rng, &qs, &xs);
    let mut redraws = 0;
    while redraws < MAX_REDRAWS && collides(&draw, uses, s) {
        redraws += 1;
        draw = sample_once(cfg, rng, &qs, &xs);
    }
    draw.redraws = redraws;
    draw
}

/// `count` draws for a pooled unit: the spectral parameter `x` must differ
/// between draws, everything else is shared with the first draw.
pub fn sample_pooled(cfg: &RunConfig, rng: &mut ChaCha8Rng, uses: &[&str], s: i64, count: usize) -> Vec<Draw> {
    let first = sample(cfg, rng, uses, s);
    let mut out = vec![first.clone()];
    while out.len() < count {
        let mut d = sample(cfg, rng, uses, s);
        let mut extra = 0;
        while extra < MAX_REDRAWS && out.iter().any(|o| close(o.x.to_complex(), d.x.to_complex())) {
            extra += 1;
            d = sample(cfg, rng, uses, s);
        }
        out.push(Draw {
            x: d.x,
            redraws: d.redraws + extra,
            ..first.clone()
        });
    }
    out
}

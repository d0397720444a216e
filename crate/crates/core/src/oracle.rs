//! Brute-force reference answers and seeded instance generators.
//!
//! Everything here is quadratic and independent of the line scan, for use as
//! ground truth in tests.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Arc, CycleInstance, Instance, Interval, Kind, LineInstance};
use crate::rational::{ExtendedValue, Rational};

/// `min over i < j of (r_j - l_i) / (j - i)`, or unbounded for one interval.
pub fn oracle_line_optimum(instance: &LineInstance) -> ExtendedValue {
    let ivs = instance.intervals();
    let mut best = ExtendedValue::Unbounded;
    for i in 0..ivs.len() {
        for j in i + 1..ivs.len() {
            let v = (&ivs[j].right - &ivs[i].left).div_count(j - i);
            if best.cmp_finite(&v).is_gt() {
                best = ExtendedValue::Finite(v);
            }
        }
    }
    best
}

/// Leftmost greedy placement with minimum spacing `d >= 0`: `q_1 = l_1`,
/// `q_i = max(l_i, q_{i-1} + d)`. Returns the points when they all fit.
pub fn feasible_line(instance: &LineInstance, d: &Rational) -> Option<Vec<Rational>> {
    let mut points: Vec<Rational> = Vec::with_capacity(instance.len());
    for iv in instance.intervals() {
        let q = match points.last() {
            None => iv.left.clone(),
            Some(prev) => (prev + d).max(iv.left.clone()),
        };
        if q > iv.right {
            return None;
        }
        points.push(q);
    }
    Some(points)
}

/// All values `(r_j - l_i) / (j - i)`, sorted ascending without duplicates.
pub fn line_candidates(instance: &LineInstance) -> Vec<Rational> {
    let ivs = instance.intervals();
    let mut out = Vec::with_capacity(ivs.len() * ivs.len() / 2);
    for i in 0..ivs.len() {
        for j in i + 1..ivs.len() {
            out.push((&ivs[j].right - &ivs[i].left).div_count(j - i));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Largest candidate value the greedy decision procedure accepts, found by
/// binary search over the sorted candidates.
pub fn oracle_line_via_candidates(instance: &LineInstance) -> ExtendedValue {
    let candidates = line_candidates(instance);
    if candidates.is_empty() {
        return ExtendedValue::Unbounded;
    }
    // feasibility is monotone: a prefix of candidates is feasible
    let feasible = candidates.partition_point(|c| feasible_line(instance, c).is_some());
    assert!(feasible > 0, "the smallest candidate is always feasible");
    ExtendedValue::Finite(candidates[feasible - 1].clone())
}

/// `min(|C| / n, min over arcs i and steps m in 1..n of window(i, m) / m)`
/// where `window(i, m)` runs clockwise from the start of arc `i` to the end
/// of arc `i + m`.
pub fn oracle_cycle_optimum(cycle: &CycleInstance) -> ExtendedValue {
    let n = cycle.len();
    if n == 1 {
        return ExtendedValue::Unbounded;
    }
    let mut best = cycle.circumference().div_count(n);
    for i in 0..n {
        for m in 1..n {
            let v = cycle.window_length(i, m).div_count(m);
            if v < best {
                best = v;
            }
        }
    }
    ExtendedValue::Finite(best)
}

/// Parameters for [`gen_instance`].
///
/// Instances are drawn from a ChaCha8 stream seeded with
/// `ChaCha8Rng::seed_from_u64(seed)`; integers below a bound come from
/// [`uniform_below`] (rejection sampling on `next_u64`). For a line, `2n`
/// values are drawn uniformly from the free room, sorted, and paired up;
/// forbidden ties are removed by shifting later values by one unit and
/// `min_gap` is added between consecutive intervals. Coordinates are
/// integers divided by `denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n: usize,
    pub kind: Kind,
    /// Line: coordinates in `[0, coordinate_max]`. Cycle: circumference.
    pub coordinate_max: u64,
    /// Minimum distance between consecutive intervals, in integer units.
    pub min_gap: u64,
    pub allow_touching: bool,
    pub allow_degenerate: bool,
    /// Scale: coordinates are `integer / denominator`.
    pub denominator: u64,
}

impl GeneratorConfig {
    pub fn line(seed: u64, n: usize, coordinate_max: u64) -> Self {
        GeneratorConfig {
            seed,
            n,
            kind: Kind::Line,
            coordinate_max,
            min_gap: 0,
            allow_touching: true,
            allow_degenerate: true,
            denominator: 1,
        }
    }

    pub fn cycle(seed: u64, n: usize, circumference: u64) -> Self {
        GeneratorConfig { kind: Kind::Cycle, ..Self::line(seed, n, circumference) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("n must be at least 1")]
    Empty,
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("coordinate range {range} cannot hold {n} intervals with the requested gaps")]
    NoRoom { n: usize, range: u64 },
    #[error("no valid cycle instance found after {0} attempts")]
    Exhausted(usize),
}

/// Uniform integer in `[0, bound)` from a 64-bit stream, unbiased by
/// rejecting draws from the incomplete top bucket. `bound > 0`.
pub fn uniform_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    assert!(bound > 0);
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

/// `2n` sorted integer positions in `[0, range]` with ties removed where the
/// config forbids them and `min_gap` inserted between intervals.
fn positions(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, range: u64) -> Result<Vec<u64>, GenError> {
    let n = cfg.n as u64;
    let inner = if cfg.allow_degenerate { 0 } else { n };
    let between = (n - 1) * cfg.min_gap.max(u64::from(!cfg.allow_touching));
    let reserved = inner + between;
    if reserved > range {
        return Err(GenError::NoRoom { n: cfg.n, range });
    }
    let free = range - reserved;
    let mut raw: Vec<u64> = (0..2 * n).map(|_| uniform_below(rng, free + 1)).collect();
    raw.sort_unstable();
    let mut shift = 0;
    for (k, v) in raw.iter_mut().enumerate() {
        if k > 0 {
            shift += if k % 2 == 1 {
                u64::from(!cfg.allow_degenerate)
            } else {
                cfg.min_gap.max(u64::from(!cfg.allow_touching))
            };
        }
        *v += shift;
    }
    Ok(raw)
}

fn scaled(v: u64, denominator: u64) -> Rational {
    Rational::new(v, denominator).expect("positive denominator")
}

/// Draws a valid instance; identical configs give identical instances.
pub fn gen_instance(cfg: &GeneratorConfig) -> Result<Instance, GenError> {
    if cfg.n == 0 {
        return Err(GenError::Empty);
    }
    if cfg.denominator == 0 {
        return Err(GenError::ZeroDenominator);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let den = cfg.denominator;
    match cfg.kind {
        Kind::Line => {
            let pos = positions(&mut rng, cfg, cfg.coordinate_max)?;
            let intervals = pos.chunks(2).map(|c| Interval::new(scaled(c[0], den), scaled(c[1], den))).collect();
            Ok(Instance::Line(LineInstance::new(intervals).expect("generator yields valid lines")))
        }
        Kind::Cycle => {
            let c = cfg.coordinate_max;
            if c == 0 {
                return Err(GenError::NoRoom { n: cfg.n, range: 0 });
            }
            const ATTEMPTS: usize = 1000;
            for _ in 0..ATTEMPTS {
                // positions live in [0, c - 1] so every arc ends before c
                let pos = positions(&mut rng, cfg, c - 1)?;
                let rotation = uniform_below(&mut rng, c);
                let mut arcs: Vec<(u64, u64)> = pos.chunks(2).map(|p| ((p[0] + rotation) % c, p[1] - p[0])).collect();
                arcs.sort_unstable();
                let circumference = scaled(c, den);
                let arcs = arcs.into_iter().map(|(s, len)| Arc::new(scaled(s, den), scaled(len, den))).collect();
                // equal starts (a degenerate arc touching the next) are rejected
                if let Ok(cycle) = CycleInstance::new(circumference, arcs) {
                    return Ok(Instance::Cycle(cycle));
                }
            }
            Err(GenError::Exhausted(ATTEMPTS))
        }
    }
}

/// Convenience wrapper returning the line instance. Panics if `cfg` is not a
/// satisfiable line config.
pub fn gen_line(cfg: &GeneratorConfig) -> LineInstance {
    match gen_instance(cfg).expect("satisfiable config") {
        Instance::Line(l) => l,
        Instance::Cycle(_) => panic!("expected a line config"),
    }
}

/// Convenience wrapper returning the cycle instance. Panics if `cfg` is not
/// a satisfiable cycle config.
pub fn gen_cycle(cfg: &GeneratorConfig) -> CycleInstance {
    match gen_instance(cfg).expect("satisfiable config") {
        Instance::Cycle(c) => c,
        Instance::Line(_) => panic!("expected a cycle config"),
    }
}

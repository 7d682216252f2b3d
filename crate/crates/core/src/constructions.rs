//! Named test-bed objects: tent trains, the harmonic-peak sawtooth, the
//! dyadic tent cascade, Fat Cantor complements with their exact removed
//! lengths, and seeded random sets and functions on a rational grid.
//!
//! Everything here is exact: node coordinates and arc endpoints are
//! rationals, so downstream incidence and indicatrix computations carry
//! no float error from the inputs.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circle_set::CircleOpenSet;
use crate::error::{Error, Result};
use crate::gauge::LengthFamily;
use crate::pl_function::PLFunction;
use crate::rational::{parse_rational, rat, rat_int, to_f64, Rational};

/// `n` congruent tents of height 1 on `[j/n, (j+1)/n)`: the canonical
/// function whose every superlevel set has exactly `n` components.
pub fn tent_train(n: u32) -> Result<PLFunction> {
    if n == 0 {
        return Err(Error::range("tooth count", "need n >= 1"));
    }
    let n = n as i64;
    let mut nodes = Vec::with_capacity(2 * n as usize);
    for j in 0..n {
        nodes.push((rat(j, n), Rational::zero()));
        nodes.push((rat(2 * j + 1, 2 * n), Rational::one()));
    }
    PLFunction::new(nodes)
}

/// Sawtooth with peaks of height `1/k` at `1/(k b)` for `k = cap..1`,
/// returning to zero between consecutive peaks at the rescaled harmonic
/// midpoints `(2k+1)/(2k(k+1)b)`, flat on `[0, a_cap/b]`, and descending
/// from the top peak `(1/b, 1)` back to zero over the wrap. Total
/// variation is twice the `cap`-th harmonic number.
pub fn pierpont(b: &Rational, cap: u32) -> Result<PLFunction> {
    if b <= &Rational::one() {
        return Err(Error::range("scale", "need b > 1"));
    }
    if cap < 2 {
        return Err(Error::range("peak count", "need cap >= 2"));
    }
    let k_max = cap as i64;
    let valley = |k: i64| rat(2 * k + 1, 2 * k * (k + 1)) / b;
    let mut nodes = Vec::with_capacity(2 * cap as usize + 2);
    nodes.push((Rational::zero(), Rational::zero()));
    nodes.push((valley(k_max), Rational::zero()));
    for k in (1..=k_max).rev() {
        nodes.push((rat(1, k) / b, rat(1, k)));
        if k > 1 {
            nodes.push((valley(k - 1), Rational::zero()));
        }
    }
    PLFunction::new(nodes)
}

/// Dyadic tent cascade: for `k = cap..1` a tent of height 1 on the base
/// `[2^-k, 2^{1-k}]`, flat on `[0, 2^-cap]`. Every level `y < 1` is
/// crossed by all `cap` tents, with component lengths `(1-y) 2^-k`.
pub fn terekhin(cap: u32) -> Result<PLFunction> {
    if cap == 0 || cap > 61 {
        return Err(Error::range("tent count", "need 1 <= cap <= 61"));
    }
    let mut nodes = Vec::with_capacity(2 * cap as usize + 1);
    nodes.push((Rational::zero(), Rational::zero()));
    for k in (1..=cap as i64).rev() {
        nodes.push((rat(1, 1 << k), Rational::zero()));
        nodes.push((rat(3, 1 << (k + 1)), Rational::one()));
    }
    PLFunction::new(nodes)
}

/// Parameters of a finite-stage Fat Cantor construction: at stage `k`
/// each surviving interval loses a centred open piece of `lambda^k`
/// times the original unit length.
#[derive(Debug, Clone, PartialEq)]
pub struct FatCantorSpec {
    pub lambda: Rational,
    pub stages: u32,
}

impl FatCantorSpec {
    pub fn new(lambda: Rational, stages: u32) -> Result<FatCantorSpec> {
        if lambda <= Rational::zero() || lambda >= rat(1, 3) {
            return Err(Error::range("removal fraction", "need 0 < lambda < 1/3"));
        }
        if stages == 0 || stages > 20 {
            return Err(Error::range("stage count", "need 1 <= stages <= 20"));
        }
        Ok(FatCantorSpec { lambda, stages })
    }

    /// Length of each of the `2^stages` surviving intervals:
    /// `2^-m (1 - lambda (1 - (2 lambda)^m) / (1 - 2 lambda))`.
    pub fn surviving_length(&self) -> Rational {
        let m = self.stages;
        let two_lam = rat_int(2) * &self.lambda;
        let removed = &self.lambda * (Rational::one() - pow_rat(&two_lam, m))
            / (Rational::one() - two_lam);
        (Rational::one() - removed) / rat_int(1i64 << m)
    }
}

fn pow_rat(x: &Rational, n: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..n {
        out *= x;
    }
    out
}

/// Runs the construction: returns the union of removed open arcs
/// (`2^{k-1}` arcs of length `lambda^k` at stage `k`) together with its
/// length family in geometric form, truncated at `spec.stages`.
pub fn fat_cantor_complement(spec: &FatCantorSpec) -> (CircleOpenSet, LengthFamily) {
    let mut survivors: Vec<(Rational, Rational)> = vec![(Rational::zero(), Rational::one())];
    let mut removed: Vec<(Rational, Rational)> = Vec::new();
    let mut gap = spec.lambda.clone();
    for _ in 0..spec.stages {
        let mut next = Vec::with_capacity(2 * survivors.len());
        for (a, b) in survivors {
            let mid = (&a + &b) / rat_int(2);
            let half = &gap / rat_int(2);
            removed.push((&mid - &half, gap.clone()));
            next.push((a, &mid - &half));
            next.push((mid + half, b));
        }
        survivors = next;
        gap *= &spec.lambda;
    }
    let arcs = removed
        .into_iter()
        .map(|(start, len)| crate::circle_set::Arc::new(start, len))
        .collect::<Result<Vec<_>>>()
        .expect("removed arcs have positive length below 1");
    let set = CircleOpenSet::normalize(arcs);
    let family = LengthFamily::geometric(1, 2.0, 1.0, to_f64(&spec.lambda), Some(spec.stages))
        .expect("parameters already validated");
    (set, family)
}

/// Seeded union of `n_arcs` disjoint open arcs with endpoints on the grid
/// `k/denom`: samples `2 n_arcs` distinct grid points and takes every
/// other gap. Fails when the grid is too small to separate the arcs.
pub fn random_open_set(n_arcs: u32, denom: u64, seed: u64) -> Result<CircleOpenSet> {
    if n_arcs == 0 {
        return Err(Error::range("arc count", "need n_arcs >= 1"));
    }
    if denom < 2 * n_arcs as u64 {
        return Err(Error::Infeasible(format!(
            "grid 1/{denom} cannot hold {n_arcs} disjoint arcs with gaps"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = sample_distinct(&mut rng, denom, 2 * n_arcs as usize);
    points.sort_unstable();
    let arcs = points
        .chunks(2)
        .map(|pair| {
            crate::circle_set::Arc::new(
                rat(pair[0] as i64, denom as i64),
                rat((pair[1] - pair[0]) as i64, denom as i64),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CircleOpenSet::normalize(arcs))
}

/// Seeded function with `n_nodes` distinct abscissas on the grid
/// `k/denom` and values on the same grid clipped to `[0, 1]`.
pub fn random_pl_function(n_nodes: u32, denom: u64, seed: u64) -> Result<PLFunction> {
    if n_nodes < 2 {
        return Err(Error::range("node count", "need n_nodes >= 2"));
    }
    if denom < n_nodes as u64 {
        return Err(Error::Infeasible(format!(
            "grid 1/{denom} cannot hold {n_nodes} distinct abscissas"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = sample_distinct(&mut rng, denom, n_nodes as usize);
    xs.sort_unstable();
    use rand::Rng;
    let nodes = xs
        .into_iter()
        .map(|x| {
            let y = rng.gen_range(0..=denom);
            (rat(x as i64, denom as i64), rat(y as i64, denom as i64))
        })
        .collect();
    PLFunction::new(nodes)
}

fn sample_distinct(rng: &mut ChaCha8Rng, universe: u64, count: usize) -> Vec<u64> {
    use rand::Rng;
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < count {
        seen.insert(rng.gen_range(0..universe));
    }
    seen.into_iter().collect()
}

/// Parses a set argument: a builder literal `fatcantor:lam,m` or
/// `random:n,d,seed`, or a raw arc-list literal.
pub fn parse_set_spec(s: &str) -> Result<CircleOpenSet> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("fatcantor:") {
        let (lam, m) = split2(rest)?;
        let spec = FatCantorSpec::new(parse_rational(lam)?, parse_u32(m)?)?;
        return Ok(fat_cantor_complement(&spec).0);
    }
    if let Some(rest) = s.strip_prefix("random:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, "random takes n,denom,seed"));
        }
        return random_open_set(parse_u32(parts[0])?, parse_u64(parts[1])?, parse_u64(parts[2])?);
    }
    s.parse()
}

/// Parses a function argument: `tent:n`, `pierpont:b,cap`, `terekhin:cap`,
/// `randompl:n,d,seed`, or a raw node-list literal.
pub fn parse_function_spec(s: &str) -> Result<PLFunction> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("tent:") {
        return tent_train(parse_u32(rest.trim())?);
    }
    if let Some(rest) = s.strip_prefix("pierpont:") {
        let (b, cap) = split2(rest)?;
        return pierpont(&parse_rational(b)?, parse_u32(cap)?);
    }
    if let Some(rest) = s.strip_prefix("terekhin:") {
        return terekhin(parse_u32(rest.trim())?);
    }
    if let Some(rest) = s.strip_prefix("randompl:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, "randompl takes n,denom,seed"));
        }
        return random_pl_function(parse_u32(parts[0])?, parse_u64(parts[1])?, parse_u64(parts[2])?);
    }
    s.parse()
}

fn split2(s: &str) -> Result<(&str, &str)> {
    s.split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::parse(0, "expected two comma-separated fields"))
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("bad integer '{s}'")))
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("bad integer '{s}'")))
}

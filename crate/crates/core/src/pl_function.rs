//! Piecewise-linear periodic functions and their level-set structure.
//!
//! A function is a closed polygon on the circle: rational nodes, linear
//! interpolation, the last node joining back to the first across the seam.
//! Values live in `[0, 1]`. Superlevel sets `{x : f(x) > y}` are computed
//! exactly as circle open sets; between consecutive node levels the set's
//! combinatorics are constant, which makes level-counting quantities
//! (indicatrix profile, variation identities) exact strip sums.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::circle_set::{complement_of_closed_union, CircleOpenSet};
use crate::error::{Error, Result};
use crate::rational::{frac_string, mod_one, parse_rational, rat, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    nodes: Vec<(Rational, Rational)>,
}

/// One level strip `(y_lo, y_hi)` free of node values: the crossing count
/// `n` and the superlevel component count `N` are constant on it, with
/// `n = 2 N` away from degenerate levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    pub y_lo: Rational,
    pub y_hi: Rational,
    pub crossings: usize,
    pub components: usize,
}

impl Strip {
    pub fn width(&self) -> Rational {
        &self.y_hi - &self.y_lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.y_lo + &self.y_hi) / rat(2, 1)
    }
}

/// Level strips between consecutive distinct node values, bottom to top.
/// A constant function yields no strips and sets the `degenerate` flag.
#[derive(Debug, Clone)]
pub struct IndicatrixProfile {
    strips: Vec<Strip>,
    degenerate: bool,
}

impl IndicatrixProfile {
    pub fn strips(&self) -> &[Strip] {
        &self.strips
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }
}

/// Lower estimate of an L^p translation modulus together with a certified
/// error radius: the true supremum lies in `[value, value + error_bound]`.
#[derive(Debug, Clone, Copy)]
pub struct ModulusEstimate {
    pub value: f64,
    pub error_bound: f64,
}

impl PLFunction {
    /// Nodes must be strictly increasing in `[0, 1)` with values in `[0, 1]`;
    /// at least two nodes.
    pub fn new(nodes: Vec<(Rational, Rational)>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::range(
                "node count",
                format!("{} nodes, need at least 2", nodes.len()),
            ));
        }
        let one = rat(1, 1);
        for (x, y) in &nodes {
            if x < &Rational::zero() || x >= &one {
                return Err(Error::range("node abscissa", format!("{} outside [0, 1)", frac_string(x))));
            }
            if y < &Rational::zero() || y > &one {
                return Err(Error::range("node value", format!("{} outside [0, 1]", frac_string(y))));
            }
        }
        for w in nodes.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::range(
                    "node abscissa",
                    format!("{} not strictly after {}", frac_string(&w[1].0), frac_string(&w[0].0)),
                ));
            }
        }
        Ok(PLFunction { nodes })
    }

    pub fn nodes(&self) -> &[(Rational, Rational)] {
        &self.nodes
    }

    /// Lifted segments `((x0, y0), (x1, y1))` with `x1 > x0`; the closing
    /// segment runs to the first node shifted by one period.
    fn segments(&self) -> Vec<((Rational, Rational), (Rational, Rational))> {
        let n = self.nodes.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (x0, y0) = &self.nodes[i];
            let (x1, y1) = if i + 1 < n {
                let (x, y) = &self.nodes[i + 1];
                (x.clone(), y.clone())
            } else {
                let (x, y) = &self.nodes[0];
                (x + rat(1, 1), y.clone())
            };
            out.push(((x0.clone(), y0.clone()), (x1, y1)));
        }
        out
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let xm = mod_one(x);
        let lifted = if xm < self.nodes[0].0 { &xm + rat(1, 1) } else { xm };
        // last node with abscissa <= lifted; the closing segment covers the
        // range [x_{n-1}, x_0 + 1]
        let idx = match self
            .nodes
            .binary_search_by(|(x0, _)| x0.cmp(&lifted))
        {
            Ok(i) => i,
            Err(0) => unreachable!("lifted point below first node"),
            Err(i) => i - 1,
        };
        let (x0, y0) = &self.nodes[idx];
        let (x1, y1) = if idx + 1 < self.nodes.len() {
            let (x, y) = &self.nodes[idx + 1];
            (x.clone(), y.clone())
        } else {
            let (x, y) = &self.nodes[0];
            (x + rat(1, 1), y.clone())
        };
        if lifted == *x0 {
            return y0.clone();
        }
        y0 + (&lifted - x0) * (&y1 - y0) / (&x1 - x0)
    }

    pub fn min_value(&self) -> Rational {
        self.nodes.iter().map(|(_, y)| y).min().unwrap().clone()
    }

    pub fn max_value(&self) -> Rational {
        self.nodes.iter().map(|(_, y)| y).max().unwrap().clone()
    }

    /// Open superlevel set `{x : f(x) > y}`, exact.
    ///
    /// Built as the complement of the closed sublevel set `{f <= y}`, so a
    /// local minimum sitting exactly at level `y` correctly splits the
    /// superlevel set into two components touching at that point.
    pub fn superlevel_set(&self, y: &Rational) -> CircleOpenSet {
        if y >= &self.max_value() {
            return CircleOpenSet::empty();
        }
        if y < &self.min_value() {
            return CircleOpenSet::full();
        }
        let mut closed: Vec<(Rational, Rational)> = Vec::new();
        for ((x0, y0), (x1, y1)) in self.segments() {
            let lo_in = &y0 <= y;
            let hi_in = &y1 <= y;
            let piece = match (lo_in, hi_in) {
                (true, true) => Some((x0, x1)),
                (false, false) => None,
                (true, false) => {
                    let xc = &x0 + (y - &y0) * (&x1 - &x0) / (&y1 - &y0);
                    Some((x0, xc))
                }
                (false, true) => {
                    let xc = &x0 + (y - &y0) * (&x1 - &x0) / (&y1 - &y0);
                    Some((xc, x1))
                }
            };
            if let Some((a, b)) = piece {
                let s = mod_one(&a);
                let e = &s + (&b - &a);
                closed.push((s, e));
            }
        }
        complement_of_closed_union(closed)
    }

    /// Strips between consecutive distinct node values, with crossing and
    /// component counts sampled at strip midpoints (both are constant on
    /// each strip).
    pub fn indicatrix_profile(&self) -> IndicatrixProfile {
        let levels: BTreeSet<&Rational> = self.nodes.iter().map(|(_, y)| y).collect();
        let levels: Vec<Rational> = levels.into_iter().cloned().collect();
        if levels.len() < 2 {
            return IndicatrixProfile {
                strips: Vec::new(),
                degenerate: true,
            };
        }
        let segments = self.segments();
        let mut strips = Vec::with_capacity(levels.len() - 1);
        for w in levels.windows(2) {
            let mid = (&w[0] + &w[1]) / rat(2, 1);
            let crossings = segments
                .iter()
                .filter(|((_, y0), (_, y1))| (y0 < &mid) != (y1 < &mid) && y0 != &mid && y1 != &mid)
                .count();
            // strictly inside a strip every crossing is transversal, so
            // the superlevel set closes up into exactly crossings/2 arcs
            strips.push(Strip {
                y_lo: w[0].clone(),
                y_hi: w[1].clone(),
                crossings,
                components: crossings / 2,
            });
        }
        IndicatrixProfile {
            strips,
            degenerate: false,
        }
    }

    /// Exact level integral of the crossing count: `sum n * strip width`.
    /// Coincides with the total variation (tested as an identity, not
    /// assumed).
    pub fn indicatrix_integral(&self) -> Rational {
        self.indicatrix_profile()
            .strips()
            .iter()
            .fold(Rational::zero(), |acc, s| {
                acc + s.width() * Rational::from_integer((s.crossings as i64).into())
            })
    }

    /// Total variation over one period: `sum |y_{i+1} - y_i|` including the
    /// closing segment.
    pub fn total_variation(&self) -> Rational {
        self.segments()
            .iter()
            .fold(Rational::zero(), |acc, ((_, y0), (_, y1))| acc + (y1 - y0).abs())
    }

    /// Cyclic sequence of local extremum values (plateaus collapsed).
    /// Empty for constant functions.
    fn extrema_values(&self) -> Vec<Rational> {
        let mut vs: Vec<Rational> = self.nodes.iter().map(|(_, y)| y.clone()).collect();
        vs.dedup();
        while vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        if vs.len() < 2 {
            return Vec::new();
        }
        let n = vs.len();
        let mut out = Vec::new();
        for i in 0..n {
            let prev = &vs[(i + n - 1) % n];
            let next = &vs[(i + 1) % n];
            let v = &vs[i];
            if (v > prev && v > next) || (v < prev && v < next) {
                out.push(v.clone());
            }
        }
        out
    }

    /// Cyclic p-variation: supremum of `sum |f(x_{i+1}) - f(x_i)|^p` over
    /// finite cyclically ordered point sets, wrap term included. For `p = 1`
    /// this is the total variation; for `p > 1` it is computed by dynamic
    /// programming over the extremum sequence anchored at a global maximum
    /// (inserting a global maximum never decreases the cyclic sum).
    pub fn p_variation(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::range("variation exponent", format!("p = {p}, need p >= 1")));
        }
        let ext = self.extrema_values();
        if ext.is_empty() {
            return Ok(0.0);
        }
        if p == 1.0 {
            return Ok(to_f64(&self.total_variation()));
        }
        let start = ext
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        let mut vals: Vec<f64> = Vec::with_capacity(ext.len() + 1);
        for i in 0..ext.len() {
            vals.push(to_f64(&ext[(start + i) % ext.len()]));
        }
        vals.push(vals[0]);
        let mut dp = vec![0.0f64; vals.len()];
        for i in 1..vals.len() {
            let mut best = f64::NEG_INFINITY;
            for j in 0..i {
                let cand = dp[j] + (vals[i] - vals[j]).abs().powf(p);
                if cand > best {
                    best = cand;
                }
            }
            dp[i] = best;
        }
        Ok(*dp.last().unwrap())
    }

    /// Piece decomposition of `g(x) = f(x + h) - f(x)`: cyclically ordered
    /// breakpoints and the (exact) values of `g` at piece ends.
    fn difference_pieces(&self, h: &Rational) -> Vec<(Rational, Rational, Rational, Rational)> {
        let mut cuts: BTreeSet<Rational> = BTreeSet::new();
        for (x, _) in &self.nodes {
            cuts.insert(x.clone());
            cuts.insert(mod_one(&(x - h)));
        }
        let cuts: Vec<Rational> = cuts.into_iter().collect();
        let m = cuts.len();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let a = cuts[i].clone();
            let b = if i + 1 < m {
                cuts[i + 1].clone()
            } else {
                &cuts[0] + rat(1, 1)
            };
            let ga = self.eval(&(&a + h)) - self.eval(&a);
            let gb = self.eval(&(&b + h)) - self.eval(&b);
            out.push((a, b, ga, gb));
        }
        out
    }

    /// Exact `int_0^1 |f(x + h) - f(x)| dx`.
    pub fn l1_difference_integral(&self, h: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (a, b, ga, gb) in self.difference_pieces(h) {
            let w = &b - &a;
            if ga.is_negative() != gb.is_negative() && !ga.is_zero() && !gb.is_zero() {
                // sign change: two triangles around the interior root
                let (pa, pb) = (ga.abs(), gb.abs());
                let wl = &w * &pa / (&pa + &pb);
                acc += (&pa * &wl + &pb * (&w - &wl)) / rat(2, 1);
            } else {
                acc += (ga.abs() + gb.abs()) * &w / rat(2, 1);
            }
        }
        acc
    }

    /// `int_0^1 |f(x + h) - f(x)|^p dx` for real `p >= 1`, via the closed
    /// form for powers of a linear function on sign-constant pieces.
    pub fn lp_difference_integral(&self, h: &Rational, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::range("integral exponent", format!("p = {p}, need p >= 1")));
        }
        fn monotone_piece(u0: f64, u1: f64, w: f64, p: f64) -> f64 {
            // int of u^p where |g| runs linearly from u0 to u1 over width w
            let du = (u1 - u0).abs();
            if du <= 1e-12 * u0.max(u1).max(1e-300) {
                return (0.5 * (u0 + u1)).powf(p) * w;
            }
            w * (u1.powf(p + 1.0) - u0.powf(p + 1.0)).abs() / (du * (p + 1.0))
        }
        let mut acc = 0.0f64;
        for (a, b, ga, gb) in self.difference_pieces(h) {
            let w = to_f64(&(&b - &a));
            let (ga, gb) = (to_f64(&ga), to_f64(&gb));
            if ga * gb < 0.0 {
                let (pa, pb) = (ga.abs(), gb.abs());
                let wl = w * pa / (pa + pb);
                acc += monotone_piece(pa, 0.0, wl, p);
                acc += monotone_piece(0.0, pb, w - wl, p);
            } else {
                acc += monotone_piece(ga.abs(), gb.abs(), w, p);
            }
        }
        Ok(acc)
    }

    /// L^p translation modulus over `(0, t]`: `sup_h (int |f(x+h)-f(x)|^p)^{1/p}`,
    /// evaluated on the node-difference critical set plus a uniform grid of
    /// `grid` steps, with `t` always included.
    ///
    /// The error radius is certified: `|g|^p <= |g|` for values in `[0, 1]`
    /// gives `||D_d f||_p <= (d V)^{1/p}`, so between consecutive sampled
    /// offsets the modulus moves by at most `(radius * V)^{1/p}`.
    pub fn modulus(&self, t: &Rational, p: f64, grid: usize) -> Result<ModulusEstimate> {
        if t <= &Rational::zero() || t > &rat(1, 2) {
            return Err(Error::range(
                "modulus window",
                format!("t = {} outside (0, 1/2]", frac_string(t)),
            ));
        }
        if !(p >= 1.0) {
            return Err(Error::range("modulus exponent", format!("p = {p}, need p >= 1")));
        }
        if grid == 0 {
            return Err(Error::range("modulus grid", "grid must be positive"));
        }
        let mut candidates: BTreeSet<Rational> = BTreeSet::new();
        for k in 1..=grid {
            candidates.insert(t * rat(k as i64, grid as i64));
        }
        for (xi, _) in &self.nodes {
            for (xj, _) in &self.nodes {
                let d = mod_one(&(xi - xj));
                if !d.is_zero() && &d <= t {
                    candidates.insert(d);
                }
            }
        }
        let mut value = 0.0f64;
        for h in &candidates {
            let v = self.lp_difference_integral(h, p)?.powf(1.0 / p);
            if v > value {
                value = v;
            }
        }
        let sorted: Vec<&Rational> = candidates.iter().collect();
        let mut radius = sorted[0].clone();
        for w in sorted.windows(2) {
            let half = (w[1] - w[0]) / rat(2, 1);
            if half > radius {
                radius = half;
            }
        }
        let v_total = to_f64(&self.total_variation());
        let error_bound = (to_f64(&radius) * v_total).powf(1.0 / p);
        Ok(ModulusEstimate { value, error_bound })
    }

    /// Inverse absolute slopes `1/|s|` of the strict crossings of level `y`,
    /// i.e. the speeds at which superlevel endpoints move per unit of level.
    pub(crate) fn crossing_rates(&self, y: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        for ((x0, y0), (x1, y1)) in self.segments() {
            if (&y0 < y) != (&y1 < y) && &y0 != y && &y1 != y {
                let slope = (&y1 - &y0) / (&x1 - &x0);
                out.push(slope.abs().recip());
            }
        }
        out
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pl:")?;
        for (x, y) in &self.nodes {
            write!(f, " ({},{})", frac_string(x), frac_string(y))?;
        }
        Ok(())
    }
}

impl FromStr for PLFunction {
    type Err = Error;

    /// Parses `pl: (x1,y1) (x2,y2) ...` with rational coordinates; the
    /// `pl:` prefix is optional.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("pl:").unwrap_or(body);
        let mut nodes = Vec::new();
        let mut rest = body;
        let mut consumed = s.len() - rest.len();
        loop {
            let trimmed = rest.trim_start();
            consumed += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            if !trimmed.starts_with('(') {
                return Err(Error::parse(consumed, format!("expected '(' before {trimmed:?}")));
            }
            let close = trimmed
                .find(')')
                .ok_or_else(|| Error::parse(consumed, "unclosed node"))?;
            let inner = &trimmed[1..close];
            let comma = inner
                .find(',')
                .ok_or_else(|| Error::parse(consumed + 1, format!("node {inner:?} missing ','")))?;
            let x = parse_rational(&inner[..comma])?;
            let y = parse_rational(&inner[comma + 1..])?;
            nodes.push((x, y));
            consumed += close + 1;
            rest = &trimmed[close + 1..];
        }
        PLFunction::new(nodes)
    }
}

//! Gauge functions, gauge sums over length families, and the scaling index
//! of geometric length sequences.
//!
//! A gauge is a non-increasing reweighting `phi` of arc lengths whose
//! product `t * phi(t)` is non-decreasing, concave, and bounded on a window
//! `(0, 1/c)`. Summing `l * phi(l)` over the component lengths of a set
//! interpolates between its measure (`phi = 1`), its component count
//! (`phi = 1/t`), and logarithmic refinements in between. Membership in the
//! class is falsified by sampling, not proved; the built-in families carry
//! analytically safe default windows.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::circle_set::CircleOpenSet;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaugeFamily {
    /// `phi(t) = 1`
    Constant,
    /// `phi(t) = t^(-alpha)`, `0 <= alpha <= 1`
    Power { alpha: f64 },
    /// `phi(t) = (log 1/t)^alpha`, `0 <= alpha <= 1`
    LogPow { alpha: f64 },
    /// `phi(t) = t^(-alpha) * exp(gamma |log t|^beta)`, `0 <= alpha, beta < 1`, `gamma > 0`
    Mixed { alpha: f64, beta: f64, gamma: f64 },
    /// `phi(t) = 1/t`
    Reciprocal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeFunction {
    family: GaugeFamily,
    c: f64,
}

impl GaugeFunction {
    pub fn constant() -> Self {
        GaugeFunction { family: GaugeFamily::Constant, c: std::f64::consts::E }
    }

    pub fn power(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::range("power exponent", format!("alpha = {alpha} outside [0, 1]")));
        }
        Ok(GaugeFunction { family: GaugeFamily::Power { alpha }, c: std::f64::consts::E })
    }

    pub fn logpow(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::range("log exponent", format!("alpha = {alpha} outside [0, 1]")));
        }
        Ok(GaugeFunction { family: GaugeFamily::LogPow { alpha }, c: std::f64::consts::E })
    }

    /// Default window: `t * phi(t)` turns non-decreasing once
    /// `log(1/t) >= (gamma*beta/(1-alpha))^(1/(1-beta))`, so `c` is set to
    /// `exp` of that threshold (at least `e`).
    pub fn mixed(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) || !(0.0..1.0).contains(&beta) {
            return Err(Error::range(
                "mixed exponents",
                format!("alpha = {alpha}, beta = {beta}, need both in [0, 1)"),
            ));
        }
        if gamma <= 0.0 {
            return Err(Error::range("mixed weight", format!("gamma = {gamma}, need gamma > 0")));
        }
        let threshold = if beta == 0.0 {
            1.0
        } else {
            (gamma * beta / (1.0 - alpha)).powf(1.0 / (1.0 - beta)).max(1.0)
        };
        Ok(GaugeFunction { family: GaugeFamily::Mixed { alpha, beta, gamma }, c: threshold.exp() })
    }

    pub fn reciprocal() -> Self {
        GaugeFunction { family: GaugeFamily::Reciprocal, c: std::f64::consts::E }
    }

    pub fn with_c(mut self, c: f64) -> Result<Self> {
        if !(c > 1.0) {
            return Err(Error::range("gauge window", format!("c = {c}, need c > 1")));
        }
        self.c = c;
        Ok(self)
    }

    pub fn family(&self) -> &GaugeFamily {
        &self.family
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn phi(&self, t: f64) -> f64 {
        debug_assert!(t > 0.0);
        match self.family {
            GaugeFamily::Constant => 1.0,
            GaugeFamily::Power { alpha } => t.powf(-alpha),
            GaugeFamily::LogPow { alpha } => (1.0 / t).ln().max(0.0).powf(alpha),
            GaugeFamily::Mixed { alpha, beta, gamma } => {
                t.powf(-alpha) * (gamma * t.ln().abs().powf(beta)).exp()
            }
            GaugeFamily::Reciprocal => 1.0 / t,
        }
    }

    /// `t * phi(t)`, computed in a form that stays finite for tiny `t`.
    pub fn psi(&self, t: f64) -> f64 {
        debug_assert!(t > 0.0);
        match self.family {
            GaugeFamily::Constant => t,
            GaugeFamily::Power { alpha } => t.powf(1.0 - alpha),
            GaugeFamily::LogPow { alpha } => t * (1.0 / t).ln().max(0.0).powf(alpha),
            GaugeFamily::Mixed { alpha, beta, gamma } => {
                t.powf(1.0 - alpha) * (gamma * t.ln().abs().powf(beta)).exp()
            }
            GaugeFamily::Reciprocal => 1.0,
        }
    }

    /// Whether this `(family, c)` pair lies in the analytically verified
    /// membership domain (the sampling check should then find nothing).
    pub fn known_member(&self) -> bool {
        let eps = 1e-12;
        match self.family {
            GaugeFamily::Constant | GaugeFamily::Power { .. } | GaugeFamily::Reciprocal => true,
            GaugeFamily::LogPow { alpha } => self.c >= alpha.exp() - eps,
            GaugeFamily::Mixed { alpha, beta, gamma } => {
                let threshold = if beta == 0.0 {
                    0.0
                } else {
                    (gamma * beta / (1.0 - alpha)).powf(1.0 / (1.0 - beta))
                };
                self.c >= threshold.exp() - eps
            }
        }
    }

    pub fn validate(&self, grid_size: usize) -> Result<PhiReport> {
        let phi = *self;
        validate_samples(move |t| phi.phi(t), self.c, grid_size)
    }
}

impl fmt::Display for GaugeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            GaugeFamily::Constant => write!(f, "const"),
            GaugeFamily::Power { alpha } => write!(f, "power:{alpha}"),
            GaugeFamily::LogPow { alpha } => write!(f, "logpow:{alpha}"),
            GaugeFamily::Mixed { alpha, beta, gamma } => write!(f, "mixed:{alpha},{beta},{gamma}"),
            GaugeFamily::Reciprocal => write!(f, "recip"),
        }
    }
}

impl FromStr for GaugeFunction {
    type Err = Error;

    /// `const`, `recip`, `power:0.5`, `logpow:1`, `mixed:0.3,0.5,1.0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "const" => return Ok(GaugeFunction::constant()),
            "recip" => return Ok(GaugeFunction::reciprocal()),
            _ => {}
        }
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("unknown gauge literal {s:?}")))?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(name.len() + 1, format!("bad number {a:?}")))
            })
            .collect::<Result<_>>()?;
        match (name, nums.as_slice()) {
            ("power", [alpha]) => GaugeFunction::power(*alpha),
            ("logpow", [alpha]) => GaugeFunction::logpow(*alpha),
            ("mixed", [alpha, beta, gamma]) => GaugeFunction::mixed(*alpha, *beta, *gamma),
            _ => Err(Error::parse(0, format!("unknown gauge literal {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhiViolation {
    pub condition: &'static str,
    pub points: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct PhiReport {
    pub is_member: bool,
    pub violations: Vec<PhiViolation>,
}

/// Sampling falsification of the gauge-class conditions for an arbitrary
/// `phi` on the window `(0, 1/c)`: non-increasing `phi`, non-decreasing and
/// midpoint-concave and bounded `t * phi(t)`, on a geometric grid spanning
/// ten decades below `1/c`. A clean report is evidence, not proof.
pub fn validate_samples(phi: impl Fn(f64) -> f64, c: f64, grid_size: usize) -> Result<PhiReport> {
    if grid_size < 3 {
        return Err(Error::range("grid size", format!("{grid_size} < 3")));
    }
    if !(c > 1.0) {
        return Err(Error::range("gauge window", format!("c = {c}, need c > 1")));
    }
    let tol = 1e-12;
    let near = |a: f64, b: f64| tol * (1.0 + a.abs() + b.abs());
    let q = 1e-10f64.powf(1.0 / grid_size as f64);
    let ts: Vec<f64> = (1..=grid_size).map(|i| q.powi(i as i32) / c).collect();
    let psi = |t: f64| t * phi(t);
    let mut violations = Vec::new();
    for w in ts.windows(2) {
        let (s, t) = (w[0], w[1]); // s > t
        let (ps, pt) = (phi(s), phi(t));
        if pt < ps - near(ps, pt) {
            violations.push(PhiViolation {
                condition: "phi non-increasing",
                points: vec![t, s],
                values: vec![pt, ps],
            });
        }
        let (vs, vt) = (psi(s), psi(t));
        if vs < vt - near(vs, vt) {
            violations.push(PhiViolation {
                condition: "t*phi(t) non-decreasing",
                points: vec![t, s],
                values: vec![vt, vs],
            });
        }
        let mid = 0.5 * (s + t);
        let vm = psi(mid);
        let chord = 0.5 * (vs + vt);
        if vm < chord - near(vm, chord) {
            violations.push(PhiViolation {
                condition: "t*phi(t) midpoint-concave",
                points: vec![t, mid, s],
                values: vec![vt, vm, vs],
            });
        }
    }
    for &t in &ts {
        let v = psi(t);
        if !v.is_finite() {
            violations.push(PhiViolation {
                condition: "t*phi(t) bounded",
                points: vec![t],
                values: vec![v],
            });
        }
    }
    Ok(PhiReport { is_member: violations.is_empty(), violations })
}

/// A finite or infinite multiset of positive lengths: an explicit list, or
/// the geometric family with `count_base * count_ratio^(k-1)` lengths of
/// size `length_base * length_ratio^k` at each stage `k >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum LengthFamily {
    Explicit(Vec<Rational>),
    Geometric {
        count_base: u64,
        count_ratio: f64,
        length_base: f64,
        length_ratio: f64,
        stages: Option<u32>,
    },
}

impl LengthFamily {
    pub fn explicit(lengths: Vec<Rational>) -> Result<Self> {
        use num_traits::Zero;
        if lengths.iter().any(|l| l <= &Rational::zero()) {
            return Err(Error::range("length", "nonpositive length in family"));
        }
        Ok(LengthFamily::Explicit(lengths))
    }

    pub fn geometric(
        count_base: u64,
        count_ratio: f64,
        length_base: f64,
        length_ratio: f64,
        stages: Option<u32>,
    ) -> Result<Self> {
        if count_base < 1 {
            return Err(Error::range("count base", "need at least 1"));
        }
        if !(count_ratio >= 1.0) {
            return Err(Error::range("count ratio", format!("{count_ratio} < 1")));
        }
        if !(length_base > 0.0) || !(0.0 < length_ratio && length_ratio < 1.0) {
            return Err(Error::range(
                "length scale",
                format!("base = {length_base}, ratio = {length_ratio}, need base > 0, 0 < ratio < 1"),
            ));
        }
        if length_base * length_ratio >= 1.0 {
            return Err(Error::range(
                "length scale",
                format!("first length {} >= 1", length_base * length_ratio),
            ));
        }
        Ok(LengthFamily::Geometric { count_base, count_ratio, length_base, length_ratio, stages })
    }

    pub fn from_set(e: &CircleOpenSet) -> Self {
        LengthFamily::Explicit(e.lengths().cloned().collect())
    }

    pub fn total_measure(&self) -> f64 {
        match self {
            LengthFamily::Explicit(ls) => ls.iter().map(|l| l.to_f64().unwrap()).sum(),
            LengthFamily::Geometric { count_base, count_ratio, length_base, length_ratio, stages } => {
                let (m, rho, a, r) = (*count_base as f64, *count_ratio, *length_base, *length_ratio);
                match stages {
                    Some(s) => (1..=*s)
                        .map(|k| m * rho.powi(k as i32 - 1) * a * r.powi(k as i32))
                        .sum(),
                    None => {
                        if rho * r >= 1.0 {
                            f64::INFINITY
                        } else {
                            m * a * r / (1.0 - rho * r)
                        }
                    }
                }
            }
        }
    }
}

impl FromStr for LengthFamily {
    type Err = Error;

    /// `geom:m,rho,a,r` (infinite), `geom:m,rho,a,r,s` (s stages), or
    /// `list:1/2,1/8,...` with rational lengths.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("unknown family literal {s:?}")))?;
        match name {
            "list" => {
                let lengths = args
                    .split(',')
                    .map(|a| parse_rational(a.trim()))
                    .collect::<Result<Vec<_>>>()?;
                LengthFamily::explicit(lengths)
            }
            "geom" => {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                if parts.len() != 4 && parts.len() != 5 {
                    return Err(Error::parse(5, format!("geom takes 4 or 5 numbers, got {}", parts.len())));
                }
                let num = |s: &str| -> Result<f64> {
                    if let Ok(r) = parse_rational(s) {
                        return Ok(r.to_f64().unwrap());
                    }
                    s.parse::<f64>().map_err(|_| Error::parse(5, format!("bad number {s:?}")))
                };
                let m = parts[0]
                    .parse::<u64>()
                    .map_err(|_| Error::parse(5, format!("bad count {:?}", parts[0])))?;
                let stages = match parts.get(4) {
                    Some(p) => Some(
                        p.parse::<u32>()
                            .map_err(|_| Error::parse(5, format!("bad stage count {p:?}")))?,
                    ),
                    None => None,
                };
                LengthFamily::geometric(m, num(parts[1])?, num(parts[2])?, num(parts[3])?, stages)
            }
            _ => Err(Error::parse(0, format!("unknown family literal {s:?}"))),
        }
    }
}

/// Value of a gauge sum: divergence is an answer, not a failure.
#[derive(Debug, Clone, PartialEq)]
pub enum GaugeSum {
    Finite(f64),
    Divergent(String),
}

impl GaugeSum {
    pub fn finite(&self) -> Option<f64> {
        match self {
            GaugeSum::Finite(v) => Some(*v),
            GaugeSum::Divergent(_) => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, GaugeSum::Divergent(_))
    }
}

impl fmt::Display for GaugeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeSum::Finite(v) => write!(f, "{v}"),
            GaugeSum::Divergent(w) => write!(f, "divergent ({w})"),
        }
    }
}

/// `sum over lengths of l * phi(l)`, counted with multiplicity.
///
/// Explicit and finite-stage families are summed directly. Infinite
/// geometric families are dispatched by gauge family: closed geometric
/// series where available, otherwise a numeric sum whose term ratios
/// decrease monotonically toward the limiting ratio, giving a certified
/// geometric tail.
pub fn gauge_sum(family: &LengthFamily, phi: &GaugeFunction) -> GaugeSum {
    match family {
        LengthFamily::Explicit(ls) => {
            GaugeSum::Finite(ls.iter().map(|l| phi.psi(l.to_f64().unwrap())).sum())
        }
        LengthFamily::Geometric { count_base, count_ratio, length_base, length_ratio, stages } => {
            let (m, rho, a, r) = (*count_base as f64, *count_ratio, *length_base, *length_ratio);
            if let Some(s) = stages {
                let total = (1..=*s)
                    .map(|k| m * rho.powi(k as i32 - 1) * phi.psi(a * r.powi(k as i32)))
                    .sum();
                return GaugeSum::Finite(total);
            }
            infinite_geometric_sum(m, rho, a, r, phi)
        }
    }
}

fn infinite_geometric_sum(m: f64, rho: f64, a: f64, r: f64, phi: &GaugeFunction) -> GaugeSum {
    match phi.family() {
        GaugeFamily::Constant => {
            let q = rho * r;
            if q >= 1.0 {
                GaugeSum::Divergent(format!("term ratio rho*r = {q} >= 1"))
            } else {
                GaugeSum::Finite(m * a * r / (1.0 - q))
            }
        }
        GaugeFamily::Power { alpha } => power_sum(m, rho, a, r, *alpha),
        GaugeFamily::Reciprocal => power_sum(m, rho, a, r, 1.0),
        GaugeFamily::LogPow { .. } => {
            if rho * r >= 1.0 {
                GaugeSum::Divergent(format!("term ratio rho*r = {} >= 1", rho * r))
            } else {
                GaugeSum::Finite(numeric_tail_sum(m, rho, a, r, phi))
            }
        }
        GaugeFamily::Mixed { alpha, .. } => {
            let q = rho * r.powf(1.0 - alpha);
            if q >= 1.0 {
                GaugeSum::Divergent(format!("term ratio rho*r^(1-alpha) = {q} >= 1"))
            } else {
                GaugeSum::Finite(numeric_tail_sum(m, rho, a, r, phi))
            }
        }
    }
}

/// Closed form for `phi = t^(-alpha)`: terms form the geometric series
/// `(m a^(1-alpha) / rho) * q^k` with `q = rho * r^(1-alpha)`.
fn power_sum(m: f64, rho: f64, a: f64, r: f64, alpha: f64) -> GaugeSum {
    let q = rho * r.powf(1.0 - alpha);
    if q >= 1.0 {
        GaugeSum::Divergent(format!("term ratio rho*r^(1-alpha) = {q} >= 1"))
    } else {
        GaugeSum::Finite(m * a.powf(1.0 - alpha) / rho * q / (1.0 - q))
    }
}

/// Numeric summation for subgeometric gauges. The ratio of consecutive
/// terms decreases in `k` for every built-in family (the log factors
/// change ever more slowly), so once the running ratio drops below 1 the
/// remainder is dominated by a geometric tail at the current ratio.
fn numeric_tail_sum(m: f64, rho: f64, a: f64, r: f64, phi: &GaugeFunction) -> f64 {
    let term = |k: u32| m * rho.powi(k as i32 - 1) * phi.psi(a * r.powi(k as i32));
    let mut acc = 0.0f64;
    let mut k = 1u32;
    loop {
        let t = term(k);
        acc += t;
        let next = term(k + 1);
        let ratio = if t > 0.0 { next / t } else { 0.0 };
        if ratio < 1.0 && next <= 1e-17 * (acc.abs() + 1e-300) {
            acc += next * ratio / (1.0 - ratio);
            return acc;
        }
        k += 1;
        debug_assert!(k < 1_000_000, "numeric gauge sum failed to converge");
    }
}

/// Concavity bound: the gauge sum over the component lengths of `E` is at
/// most `|E| * phi(|E| / N(E))`, with equality at equal lengths, whenever
/// all lengths lie inside the concavity window.
pub fn jensen_bound(e: &CircleOpenSet, phi: &GaugeFunction) -> Result<f64> {
    if e.is_empty() {
        return Err(Error::EmptySet("jensen bound"));
    }
    let measure = e.measure().to_f64().unwrap();
    let n = e.count() as f64;
    Ok(measure * phi.phi(measure / n))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BtIndex {
    pub value: f64,
    pub truncated: bool,
}

/// Scaling index `inf{beta : sum l_k^beta < infinity}` of a length family.
///
/// For the infinite geometric family the sum `sum m rho^(k-1) (a r^k)^beta`
/// converges exactly when `rho * r^beta < 1`, so the index is
/// `log(rho) / log(1/r)`. Finite families have index 0 by the letter of the
/// definition; that value is flagged as truncated rather than extrapolated.
pub fn bt_index(family: &LengthFamily) -> Result<BtIndex> {
    match family {
        LengthFamily::Geometric { count_ratio, length_ratio, stages: None, .. } => {
            let (rho, r) = (*count_ratio, *length_ratio);
            if rho * r >= 1.0 {
                return Err(Error::Infeasible(format!(
                    "total length diverges: rho*r = {} >= 1",
                    rho * r
                )));
            }
            Ok(BtIndex { value: rho.ln() / (1.0 / r).ln(), truncated: false })
        }
        _ => Ok(BtIndex { value: 0.0, truncated: true }),
    }
}

//! Open subsets of the unit circle with exact rational endpoints.
//!
//! The circle is `R / Z`; a set is a finite union of open arcs. The central
//! quantity is the incidence measure `tau(E, h)`: the measure of the set of
//! points where the indicator of `E` and the indicator of its `h`-translate
//! disagree. Because `tau` is piecewise linear in `h` with breakpoints only
//! at pairwise endpoint differences, its running supremum over `(0, t]` is
//! computed exactly from a finite critical set.
//!
//! Open/closed endpoint distinctions carry zero measure and are not tracked
//! beyond component structure: touching arcs stay distinct components. The
//! full circle is a distinguished state, kept apart from the unit-length arc
//! that misses exactly its anchor point; the two agree on every measure
//! computation and differ only in membership and complement-side quantities.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{frac_string, mod_one, parse_rational, rat, Rational};

/// An open arc, stored as `(start, start + length)` with `start` reduced to
/// `[0, 1)`. `length` may reach `1`; the arc then covers the circle except
/// the single point at its anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    start: Rational,
    length: Rational,
}

impl Arc {
    /// Builds an arc; `start` is interpreted mod 1 and the length must lie
    /// in `(0, 1]`.
    pub fn new(start: Rational, length: Rational) -> Result<Self> {
        if length <= Rational::zero() || length > Rational::from_integer(1.into()) {
            return Err(Error::InvalidArc(format!(
                "length {} outside (0, 1]",
                frac_string(&length)
            )));
        }
        Ok(Arc {
            start: mod_one(&start),
            length,
        })
    }

    pub fn start(&self) -> &Rational {
        &self.start
    }

    pub fn length(&self) -> &Rational {
        &self.length
    }

    /// Lifted endpoint `start + length`, possibly past 1 for wrapping arcs.
    pub fn end(&self) -> Rational {
        &self.start + &self.length
    }
}

/// Normalized finite union of open arcs: sorted by start, pairwise disjoint
/// after mod-1 unwrapping, overlaps merged, total measure cached. The full
/// circle carries its own flag so it stays distinguishable from a punctured
/// circle (one unit-length arc), which has the same measure but excludes
/// its anchor point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleOpenSet {
    arcs: Vec<Arc>,
    measure: Rational,
    full: bool,
}

enum Merged {
    All,
    Parts(Vec<(Rational, Rational)>),
}

/// Sweep-merges lifted intervals `(s, e)` with `s` in `[0, 1)`, `e <= s + 1`,
/// joining across the seam. `closed` controls whether touching intervals
/// merge (closed sets) or stay distinct (open sets).
fn merge_circular(mut iv: Vec<(Rational, Rational)>, closed: bool) -> Merged {
    iv.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let one = Rational::from_integer(1.into());

    let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(iv.len());
    for (s, e) in iv {
        if let Some(last) = merged.last_mut() {
            let joins = if closed { s <= last.1 } else { s < last.1 };
            if joins {
                if e > last.1 {
                    last.1 = e;
                }
                continue;
            }
        }
        merged.push((s, e));
    }

    // Only the final interval can spill past 1; fold leading intervals that
    // the spill covers back into it.
    loop {
        if merged.len() < 2 {
            break;
        }
        let spill = merged.last().unwrap().1.clone() - &one;
        if spill <= Rational::zero() {
            break;
        }
        let absorbs = if closed {
            merged[0].0 <= spill
        } else {
            merged[0].0 < spill
        };
        if !absorbs {
            break;
        }
        let first = merged.remove(0);
        let last = merged.last_mut().unwrap();
        let lifted = first.1 + &one;
        if lifted > last.1 {
            last.1 = lifted;
        }
    }

    if let [only] = merged.as_slice() {
        let len = &only.1 - &only.0;
        if len > one || (closed && len == one) {
            return Merged::All;
        }
    }
    debug_assert!(merged
        .iter()
        .all(|(s, e)| &(e - s) <= &one && s >= &Rational::zero() && s < &one));
    Merged::Parts(merged)
}

impl CircleOpenSet {
    pub fn empty() -> Self {
        CircleOpenSet {
            arcs: Vec::new(),
            measure: Rational::zero(),
            full: false,
        }
    }

    /// The full circle: every point is a member and the complement is empty.
    /// Stored as the unit arc at 0 so all measure computations go through
    /// the ordinary arc paths.
    pub fn full() -> Self {
        CircleOpenSet {
            arcs: vec![Arc {
                start: Rational::zero(),
                length: rat(1, 1),
            }],
            measure: rat(1, 1),
            full: true,
        }
    }

    /// Canonicalizes an arbitrary arc list: sorts, merges overlaps (touching
    /// arcs remain distinct components), and resolves wrap-around at the
    /// seam. A union covering the whole circle collapses to `full()`.
    pub fn normalize(raw: Vec<Arc>) -> Self {
        if raw.is_empty() {
            return CircleOpenSet::empty();
        }
        let iv = raw.into_iter().map(|a| (a.start.clone(), a.end())).collect();
        match merge_circular(iv, false) {
            Merged::All => CircleOpenSet::full(),
            Merged::Parts(parts) => {
                let arcs: Vec<Arc> = parts
                    .into_iter()
                    .map(|(s, e)| Arc {
                        length: &e - &s,
                        start: s,
                    })
                    .collect();
                Self::from_sorted(arcs)
            }
        }
    }

    fn from_sorted(arcs: Vec<Arc>) -> Self {
        let measure = arcs.iter().fold(Rational::zero(), |acc, a| acc + &a.length);
        debug_assert!(measure <= rat(1, 1));
        CircleOpenSet {
            arcs,
            measure,
            full: false,
        }
    }

    /// Internal constructor for arcs already known pairwise disjoint.
    pub(crate) fn from_disjoint(mut arcs: Vec<Arc>) -> Self {
        arcs.sort_by(|a, b| a.start.cmp(&b.start));
        Self::from_sorted(arcs)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn measure(&self) -> &Rational {
        &self.measure
    }

    /// Number of connected components.
    pub fn count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// True only for the genuine full circle, not for a punctured one.
    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn lengths(&self) -> impl Iterator<Item = &Rational> {
        self.arcs.iter().map(|a| &a.length)
    }

    pub fn min_length(&self) -> Option<Rational> {
        self.lengths().min().cloned()
    }

    /// Complement component lengths in cyclic order, one per gap between
    /// consecutive arcs. Touching arcs contribute a zero-length gap (the
    /// complement component there is a single point).
    pub fn gaps(&self) -> Vec<Rational> {
        if self.arcs.is_empty() || self.full {
            return Vec::new();
        }
        let one = rat(1, 1);
        let mut out = Vec::with_capacity(self.arcs.len());
        for w in self.arcs.windows(2) {
            out.push(&w[1].start - w[0].end());
        }
        let last = self.arcs.last().unwrap();
        out.push(&self.arcs[0].start + &one - last.end());
        debug_assert!(out.iter().all(|g| !g.is_negative()));
        out
    }

    pub fn min_gap(&self) -> Option<Rational> {
        self.gaps().into_iter().min()
    }

    /// Strict interior membership (endpoints excluded). The full circle
    /// contains every point; a punctured circle excludes its anchor.
    pub fn contains(&self, x: &Rational) -> bool {
        if self.full {
            return true;
        }
        let x = mod_one(x);
        let one = rat(1, 1);
        self.arcs.iter().any(|a| {
            let e = a.end();
            (x > a.start && x < e) || (e > one && x < &e - &one)
        })
    }

    /// Arc pieces cut at the seam: sorted sub-segments of `[0, 1]`.
    fn segments_unit(&self) -> Vec<(Rational, Rational)> {
        let one = rat(1, 1);
        let mut segs = Vec::with_capacity(self.arcs.len() + 1);
        for a in &self.arcs {
            let e = a.end();
            if e <= one {
                segs.push((a.start.clone(), e));
            } else {
                segs.push((a.start.clone(), one.clone()));
                segs.push((Rational::zero(), &e - &one));
            }
        }
        segs.sort_by(|a, b| a.0.cmp(&b.0));
        segs
    }

    /// Exact measure of the overlap with another open set.
    pub fn intersection_measure(&self, other: &CircleOpenSet) -> Rational {
        let a = self.segments_unit();
        let b = other.segments_unit();
        let mut acc = Rational::zero();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let lo = a[i].0.clone().max(b[j].0.clone());
            let hi = a[i].1.clone().min(b[j].1.clone());
            if lo < hi {
                acc += &hi - &lo;
            }
            if a[i].1 <= b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        acc
    }

    /// Translate by `-h` mod 1: `{x - h : x in E}`. Exactly inverts under
    /// `translate(-h)` and preserves measure and component count.
    pub fn translate(&self, h: &Rational) -> CircleOpenSet {
        if self.full {
            return self.clone();
        }
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                start: mod_one(&(&a.start - h)),
                length: a.length.clone(),
            })
            .collect();
        let out = Self::from_disjoint(arcs);
        debug_assert_eq!(out.measure, self.measure);
        out
    }

    /// Incidence measure with the own `h`-translate: the exact measure of
    /// `{x : chi_E(x + h) != chi_E(x)}`, i.e. of `E \u{394} (E - h)`.
    ///
    /// Symmetric in `h <-> -h` and invariant under rotating `E`.
    pub fn tau(&self, h: &Rational) -> Rational {
        let hm = mod_one(h);
        if hm.is_zero() || self.is_empty() {
            return Rational::zero();
        }
        let shifted = self.translate(&hm);
        let inter = self.intersection_measure(&shifted);
        (&self.measure - &inter) * rat(2, 1)
    }

    /// Exact supremum of `tau` over `h in (0, t]`, `0 < t <= 1/2`.
    ///
    /// `tau(E, .)` is piecewise linear with breakpoints contained in the set
    /// of pairwise endpoint differences mod 1, so the supremum is a maximum
    /// over that critical set restricted to `(0, t]`, plus `t` itself.
    pub fn tau_sup(&self, t: &Rational) -> Result<Rational> {
        if t <= &Rational::zero() || t > &rat(1, 2) {
            return Err(Error::range(
                "tau_sup window",
                format!("t = {} outside (0, 1/2]", frac_string(t)),
            ));
        }
        if self.is_empty() || self.measure == rat(1, 1) {
            // tau vanishes identically once the complement is null
            return Ok(Rational::zero());
        }
        let mut endpoints: Vec<Rational> = Vec::with_capacity(2 * self.arcs.len());
        for a in &self.arcs {
            endpoints.push(a.start.clone());
            endpoints.push(mod_one(&a.end()));
        }
        let mut critical: BTreeSet<Rational> = BTreeSet::new();
        critical.insert(t.clone());
        for ei in &endpoints {
            for ej in &endpoints {
                let d = mod_one(&(ei - ej));
                if !d.is_zero() && &d <= t {
                    critical.insert(d);
                }
            }
        }
        let mut best = Rational::zero();
        for h in &critical {
            let v = self.tau(h);
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Measure of the part of `E` within distance `h` of its complement:
    /// `sum_k min(l_k, 2h)` over component lengths. Returns 0 for the empty
    /// and the full set (the complement neighborhood degenerates).
    ///
    /// `tau(E, h) <= 2 * inner_collar(E, h)` always; the factor 2 collapses
    /// to 1 whenever `2h <= min_length` (the two one-sided collars of each
    /// component are then disjoint).
    pub fn inner_collar(&self, h: &Rational) -> Result<Rational> {
        if h.is_negative() {
            return Err(Error::range(
                "collar radius",
                format!("h = {} negative", frac_string(h)),
            ));
        }
        if self.is_empty() || self.is_full() {
            return Ok(Rational::zero());
        }
        let two_h = h * rat(2, 1);
        let mut acc = Rational::zero();
        for a in &self.arcs {
            acc += a.length.clone().min(two_h.clone());
        }
        Ok(acc)
    }

    /// Measure of the closed `h`-neighborhood of the complement,
    /// `|K| + inner_collar`.
    pub fn complement_neighborhood(&self, h: &Rational) -> Result<Rational> {
        let collar = self.inner_collar(h)?;
        if self.is_empty() {
            return Ok(rat(1, 1));
        }
        if self.is_full() {
            return Ok(Rational::zero());
        }
        Ok(rat(1, 1) - &self.measure + collar)
    }
}

/// Complement of a finite union of closed intervals `(start, end)` lifted
/// with `start` in `[0, 1)`, `end - start` in `[0, 1]`. Degenerate
/// zero-length intervals (single points) are honored: the two open arcs
/// flanking an isolated point stay distinct components.
pub(crate) fn complement_of_closed_union(iv: Vec<(Rational, Rational)>) -> CircleOpenSet {
    if iv.is_empty() {
        return CircleOpenSet::full();
    }
    let one = rat(1, 1);
    match merge_circular(iv, true) {
        Merged::All => CircleOpenSet::empty(),
        Merged::Parts(parts) => {
            let mut arcs = Vec::with_capacity(parts.len());
            for w in parts.windows(2) {
                let len = &w[1].0 - &w[0].1;
                if len > Rational::zero() {
                    arcs.push(Arc {
                        start: mod_one(&w[0].1),
                        length: len,
                    });
                }
            }
            let last = parts.last().unwrap();
            let first = parts.first().unwrap();
            let len = &first.0 + &one - &last.1;
            if len > Rational::zero() {
                arcs.push(Arc {
                    start: mod_one(&last.1),
                    length: len,
                });
            }
            CircleOpenSet::from_disjoint(arcs)
        }
    }
}

impl fmt::Display for CircleOpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            return write!(f, "full");
        }
        let mut first = true;
        for a in &self.arcs {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{}+{}", frac_string(&a.start), frac_string(&a.length))?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CircleOpenSet {
    type Err = Error;

    /// Parses the set literal `a1/b1+L1/M1, a2/b2+L2/M2, ...`; whitespace is
    /// tolerated, the empty string denotes the empty set, the word `full`
    /// denotes the whole circle, and float literals are rejected. Errors
    /// carry the byte offset of the offending token.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(CircleOpenSet::empty());
        }
        if s.trim() == "full" {
            return Ok(CircleOpenSet::full());
        }
        let mut arcs = Vec::new();
        let mut offset = 0usize;
        for chunk in s.split(',') {
            let at = |inner: usize| offset + inner;
            let plus = chunk.find('+').ok_or_else(|| {
                Error::parse(at(0), format!("arc {:?} missing '+' separator", chunk.trim()))
            })?;
            let (s_str, l_str) = (&chunk[..plus], &chunk[plus + 1..]);
            let start = parse_rational(s_str).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::parse(at(o), message),
                other => other,
            })?;
            let length = parse_rational(l_str).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::parse(at(plus + 1 + o), message),
                other => other,
            })?;
            arcs.push(Arc::new(start, length).map_err(|e| match e {
                Error::InvalidArc(m) => Error::parse(at(0), m),
                other => other,
            })?);
            offset += chunk.len() + 1;
        }
        Ok(CircleOpenSet::normalize(arcs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn arc(s: (i64, i64), l: (i64, i64)) -> Arc {
        Arc::new(rat(s.0, s.1), rat(l.0, l.1)).unwrap()
    }

    fn set(arcs: Vec<Arc>) -> CircleOpenSet {
        CircleOpenSet::normalize(arcs)
    }

    /// Exact reference tau: cut `[0, 1)` at every endpoint of `E` and its
    /// translate, then total the cells whose midpoints disagree.
    fn tau_brute(e: &CircleOpenSet, h: &Rational) -> Rational {
        let t = e.translate(&mod_one(h));
        let mut cuts: BTreeSet<Rational> = BTreeSet::new();
        cuts.insert(Rational::zero());
        cuts.insert(rat(1, 1));
        for s in e.segments_unit().into_iter().chain(t.segments_unit()) {
            cuts.insert(s.0);
            cuts.insert(s.1);
        }
        let cuts: Vec<_> = cuts.into_iter().collect();
        let mut acc = Rational::zero();
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / rat(2, 1);
            if e.contains(&mid) != t.contains(&mid) {
                acc += &w[1] - &w[0];
            }
        }
        acc
    }

    #[test]
    fn normalize_merges_overlap() {
        let e = set(vec![arc((1, 10), (1, 5)), arc((1, 4), (1, 5))]);
        assert_eq!(e.count(), 1);
        assert_eq!(e.arcs()[0].start(), &rat(1, 10));
        assert_eq!(e.arcs()[0].length(), &rat(7, 20));
    }

    #[test]
    fn normalize_joins_across_seam() {
        let e = set(vec![arc((9, 10), (1, 5)), arc((1, 20), (1, 10))]);
        assert_eq!(e.count(), 1);
        assert_eq!(e.arcs()[0].start(), &rat(9, 10));
        assert_eq!(e.arcs()[0].length(), &rat(1, 4));
        assert!(e.contains(&Rational::zero()));
    }

    #[test]
    fn normalize_keeps_touching_arcs_distinct() {
        let e = set(vec![arc((1, 10), (1, 5)), arc((3, 10), (1, 5))]);
        assert_eq!(e.count(), 2);
        assert_eq!(e.measure(), &rat(2, 5));
        assert!(!e.contains(&rat(3, 10)));
        assert_eq!(e.min_gap(), Some(Rational::zero()));
    }

    #[test]
    fn normalize_collapses_full_cover() {
        let e = set(vec![arc((0, 1), (3, 5)), arc((1, 2), (3, 5))]);
        assert!(e.is_full());
        assert_eq!(e.count(), 1);
        assert_eq!(e, CircleOpenSet::full());
        // every former endpoint is interior to the other arc
        assert!(e.contains(&Rational::zero()));
        assert!(e.contains(&rat(1, 2)));
    }

    #[test]
    fn unit_length_arc_is_a_punctured_circle_not_full() {
        let e = set(vec![arc((1, 3), (1, 1))]);
        assert!(!e.is_full());
        assert_eq!(e.count(), 1);
        assert_eq!(e.measure(), &rat(1, 1));
        assert!(!e.contains(&rat(1, 3)));
        assert!(e.contains(&Rational::zero()));
        assert_ne!(e, CircleOpenSet::full());
        let back: CircleOpenSet = e.to_string().parse().unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn full_set_contains_everything_and_round_trips() {
        let e = CircleOpenSet::full();
        for x in [rat(0, 1), rat(1, 3), rat(1, 2), rat(7, 8)] {
            assert!(e.contains(&x));
        }
        assert_eq!(e.tau(&rat(1, 8)), Rational::zero());
        assert_eq!(e.translate(&rat(1, 7)), e);
        assert!(e.gaps().is_empty());
        assert_eq!(e.to_string(), "full");
        let back: CircleOpenSet = "full".parse().unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn measure_and_gaps() {
        let e = set(vec![arc((0, 1), (1, 4)), arc((1, 2), (1, 4))]);
        assert_eq!(e.measure(), &rat(1, 2));
        assert_eq!(e.gaps(), vec![rat(1, 4), rat(1, 4)]);
        assert_eq!(e.min_length(), Some(rat(1, 4)));
    }

    #[test]
    fn translate_round_trip_and_direction() {
        let e = set(vec![arc((0, 1), (1, 4))]);
        let t = e.translate(&rat(1, 2));
        assert_eq!(t.arcs()[0].start(), &rat(1, 2));
        let back = t.translate(&rat(-1, 2));
        assert_eq!(back, e);
    }

    #[test]
    fn tau_half_interval() {
        let e = set(vec![arc((0, 1), (1, 2))]);
        assert_eq!(e.tau(&rat(1, 8)), rat(1, 4));
        assert_eq!(e.tau(&rat_int(0)), Rational::zero());
    }

    #[test]
    fn tau_two_arcs_hits_sharp_slope() {
        let e = set(vec![arc((0, 1), (1, 4)), arc((1, 2), (1, 4))]);
        // 2 h N with N = 2 while h stays below every gap and length
        assert_eq!(e.tau(&rat(1, 8)), rat(1, 2));
    }

    #[test]
    fn tau_symmetric_and_rotation_invariant() {
        let e = set(vec![arc((1, 7), (1, 5)), arc((2, 3), (1, 9))]);
        let h = rat(3, 17);
        assert_eq!(e.tau(&h), e.tau(&rat(-3, 17)));
        let r = e.translate(&rat(5, 11));
        assert_eq!(e.tau(&h), r.tau(&h));
    }

    #[test]
    fn tau_matches_brute_force_on_assorted_inputs() {
        let sets = [
            set(vec![arc((0, 1), (1, 2))]),
            set(vec![arc((0, 1), (1, 4)), arc((1, 2), (1, 4))]),
            set(vec![arc((9, 10), (1, 5)), arc((2, 5), (1, 7))]),
            set(vec![arc((1, 10), (1, 5)), arc((3, 10), (1, 5))]),
            CircleOpenSet::full(),
            CircleOpenSet::empty(),
        ];
        let hs = [rat(1, 8), rat(1, 3), rat(1, 2), rat(5, 7), rat(13, 16)];
        for e in &sets {
            for h in &hs {
                assert_eq!(e.tau(h), tau_brute(e, h), "set {e} h {}", frac_string(h));
            }
        }
    }

    #[test]
    fn tau_sup_single_arc() {
        let e = set(vec![arc((0, 1), (1, 2))]);
        assert_eq!(e.tau_sup(&rat(1, 4)).unwrap(), rat(1, 2));
    }

    #[test]
    fn tau_sup_finds_peak_between_endpoints() {
        // At h = 1/4 the translate is disjoint from the set: tau = 2|E| = 1,
        // strictly above the values at the endpoint differences 1/2 and t.
        let e = set(vec![arc((0, 1), (1, 4)), arc((1, 2), (1, 4))]);
        assert_eq!(e.tau_sup(&rat(1, 2)).unwrap(), rat_int(1));
    }

    #[test]
    fn tau_sup_rejects_bad_window() {
        let e = set(vec![arc((0, 1), (1, 2))]);
        assert!(e.tau_sup(&rat_int(0)).is_err());
        assert!(e.tau_sup(&rat(2, 3)).is_err());
    }

    #[test]
    fn collar_values() {
        let e = set(vec![arc((0, 1), (1, 2))]);
        assert_eq!(e.inner_collar(&rat(1, 8)).unwrap(), rat(1, 4));
        assert_eq!(e.inner_collar(&rat(1, 2)).unwrap(), rat(1, 2));
        assert_eq!(e.inner_collar(&Rational::zero()).unwrap(), Rational::zero());
        assert_eq!(
            CircleOpenSet::full().inner_collar(&rat(1, 8)).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            CircleOpenSet::empty().inner_collar(&rat(1, 8)).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn collar_factor_two_is_sharp_for_short_arcs() {
        // One arc of length h: the translate clears the arc entirely, so
        // tau = 2l while the collar is l. The inequality tau <= collar holds
        // only in the wide regime 2h <= min_length.
        let e = set(vec![arc((0, 1), (1, 8))]);
        let h = rat(1, 8);
        assert_eq!(e.tau(&h), rat(1, 4));
        assert_eq!(e.inner_collar(&h).unwrap(), rat(1, 8));
        let narrow = rat(1, 16);
        assert!(e.tau(&narrow) <= e.inner_collar(&narrow).unwrap());
    }

    #[test]
    fn complement_neighborhood_adds_complement_mass() {
        let e = set(vec![arc((0, 1), (1, 2))]);
        assert_eq!(e.complement_neighborhood(&rat(1, 8)).unwrap(), rat(3, 4));
    }

    #[test]
    fn closed_complement_honors_isolated_points() {
        // Closed set {1/2} union [0, 1/4]: complement has two components
        // that touch at the puncture 1/2.
        let c = complement_of_closed_union(vec![
            (rat(1, 2), rat(1, 2)),
            (Rational::zero(), rat(1, 4)),
        ]);
        assert_eq!(c.count(), 2);
        assert_eq!(c.measure(), &rat(3, 4));
        assert!(!c.contains(&rat(1, 2)));
        assert!(c.contains(&rat(3, 8)));
    }

    #[test]
    fn closed_complement_of_nothing_is_full() {
        let c = complement_of_closed_union(Vec::new());
        assert!(c.is_full());
        assert!(c.contains(&rat(2, 7)));
    }

    #[test]
    fn closed_complement_of_a_single_point_is_punctured() {
        let c = complement_of_closed_union(vec![(rat(1, 3), rat(1, 3))]);
        assert!(!c.is_full());
        assert_eq!(c.count(), 1);
        assert_eq!(c.measure(), &rat(1, 1));
        assert!(!c.contains(&rat(1, 3)));
        assert!(c.contains(&rat(1, 2)));
        assert_eq!(c.inner_collar(&rat(1, 16)).unwrap(), rat(1, 8));
    }

    #[test]
    fn closed_complement_merges_touching_closed_parts() {
        let c = complement_of_closed_union(vec![
            (Rational::zero(), rat(1, 4)),
            (rat(1, 4), rat(1, 2)),
        ]);
        assert_eq!(c.count(), 1);
        assert_eq!(c.measure(), &rat(1, 2));
    }

    #[test]
    fn literal_round_trip() {
        let e: CircleOpenSet = "0/1+1/2, 3/4+1/8".parse().unwrap();
        assert_eq!(e.count(), 2);
        assert_eq!(e.measure(), &rat(5, 8));
        let back: CircleOpenSet = e.to_string().parse().unwrap();
        assert_eq!(back, e);
        let empty: CircleOpenSet = "".parse().unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn literal_errors_carry_offsets() {
        let err = "0/1+1/2, 3/4".parse::<CircleOpenSet>().unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert!(offset >= 8, "offset {offset}"),
            other => panic!("unexpected error {other:?}"),
        }
        assert!("0.5+1/4".parse::<CircleOpenSet>().is_err());
        assert!("0/1+0/1".parse::<CircleOpenSet>().is_err());
    }

    #[test]
    fn representation_is_independent_of_input_scaling() {
        let a: CircleOpenSet = "2/4+4/8".parse().unwrap();
        let b: CircleOpenSet = "1/2+1/2".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.tau(&rat(3, 14)), b.tau(&rat(3, 14)));
    }
}

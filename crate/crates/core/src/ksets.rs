//! Planar point configurations over exact rationals, the rotating-line
//! sweep, k-set counts, and the diameter sandwich.
//!
//! A configuration is valid when no three points are collinear and no two
//! share a y-coordinate. Projecting onto an upward directed line and
//! rotating it counterclockwise through a half turn reads off a circular
//! sequence; the switch tallies of that sequence count the k-point subsets
//! cut off by lines. Every predicate is an integer-free exact sign
//! computation on rational cross products — no floating point ever decides
//! an identity.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::budget::{Budget, ResourceError};
use crate::circseq::{composition_gates_unchecked, GateSet};
use crate::multiperm::{composition_from_gates, diameter, Composition, MultipermError};
use crate::perm_core::{CircularSequence, SequenceBuilder, MAX_N};
use crate::util::{choose2, SplitMix64};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("need at least 2 points, found {0}")]
    TooFewPoints(usize),
    #[error("need at most {MAX_N} points, found {0}")]
    TooManyPoints(usize),
    #[error("points {first} and {second} lie on a line parallel to the x-axis")]
    HorizontalPair { first: usize, second: usize },
    #[error("points {a}, {b} and {c} are collinear")]
    CollinearTriple { a: usize, b: usize, c: usize },
    #[error("sweep degeneracy: {detail}")]
    SweepDegeneracy { detail: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KsetError {
    #[error("k={k} out of range for n={n} (need 1 <= k <= (n-1)/2)")]
    KOutOfRange { k: u8, n: u8 },
    #[error("subset element {element} out of range (max {max})")]
    SpecElementOutOfRange { element: u8, max: u8 },
    #[error("left and right subsets are both empty")]
    EmptySpec,
    #[error("count formulas disagree: direct {direct} vs switch form {via_switches}")]
    FormulaMismatch { direct: u64, via_switches: u64 },
    #[error(transparent)]
    Point(#[from] PointError),
    #[error(transparent)]
    Multiperm(#[from] MultipermError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

/// A planar point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_integers(x: i64, y: i64) -> Self {
        Point {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

/// Sign of the cross product `(head - tail) x (p - tail)`: positive when `p`
/// lies strictly left of the directed line `tail -> head`.
pub(crate) fn side_of_line(tail: &Point, head: &Point, p: &Point) -> i32 {
    let cross = (&head.x - &tail.x) * (&p.y - &tail.y) - (&head.y - &tail.y) * (&p.x - &tail.x);
    match cross.cmp(&BigRational::zero()) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// A validated configuration. Labels `1..=n` follow decreasing projection
/// onto the upward vertical, so label 1 is the highest point.
#[derive(Clone, PartialEq, Eq)]
pub struct PointConfig {
    points: Vec<Point>,
}

impl PointConfig {
    /// Validates general position and assigns labels by decreasing
    /// y-coordinate. Errors name 1-based indices into the input order.
    pub fn new(raw: Vec<Point>) -> Result<Self, PointError> {
        if raw.len() < 2 {
            return Err(PointError::TooFewPoints(raw.len()));
        }
        if raw.len() > MAX_N as usize {
            return Err(PointError::TooManyPoints(raw.len()));
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&i, &j| raw[j].y.cmp(&raw[i].y));
        for pair in order.windows(2) {
            if raw[pair[0]].y == raw[pair[1]].y {
                let (mut first, mut second) = (pair[0] + 1, pair[1] + 1);
                if first > second {
                    std::mem::swap(&mut first, &mut second);
                }
                return Err(PointError::HorizontalPair { first, second });
            }
        }
        for i in 0..raw.len() {
            for j in i + 1..raw.len() {
                for k in j + 1..raw.len() {
                    if side_of_line(&raw[i], &raw[j], &raw[k]) == 0 {
                        return Err(PointError::CollinearTriple {
                            a: i + 1,
                            b: j + 1,
                            c: k + 1,
                        });
                    }
                }
            }
        }
        let points = order.into_iter().map(|i| raw[i].clone()).collect();
        Ok(PointConfig { points })
    }

    pub fn n(&self) -> u8 {
        self.points.len() as u8
    }

    /// The point with the given 1-based label.
    pub fn point(&self, label: u8) -> &Point {
        &self.points[label as usize - 1]
    }

    /// Points in label order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }
}

impl fmt::Debug for PointConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointConfig(n={})", self.n())
    }
}

fn parse_rational(token: &str, line: usize) -> Result<BigRational, PointError> {
    let bad = |message: &str| PointError::Parse {
        line,
        message: format!("{message}: {token:?}"),
    };
    match token.split_once('/') {
        Some((numer, denom)) => {
            let numer = BigInt::from_str(numer.trim()).map_err(|_| bad("bad numerator"))?;
            let denom = BigInt::from_str(denom.trim()).map_err(|_| bad("bad denominator"))?;
            if denom.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        }
        None => {
            let numer = BigInt::from_str(token.trim()).map_err(|_| bad("bad integer"))?;
            Ok(BigRational::from_integer(numer))
        }
    }
}

/// Parses a points file: one point per line as two whitespace-separated
/// exact rationals (`3/7 -2`), `#` comments, blank lines ignored. No
/// validation beyond syntax.
pub fn parse_points(text: &str) -> Result<Vec<Point>, PointError> {
    let mut points = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(PointError::Parse {
                line,
                message: format!("expected 2 coordinates, found {}", tokens.len()),
            });
        }
        points.push(Point::new(
            parse_rational(tokens[0], line)?,
            parse_rational(tokens[1], line)?,
        ));
    }
    Ok(points)
}

/// Parses and validates a points file.
pub fn load_points(text: &str) -> Result<PointConfig, PointError> {
    PointConfig::new(parse_points(text)?)
}

/// Reads off the circular sequence of a configuration by rotating the
/// projection line counterclockwise through a half turn. Each pair of
/// points swaps exactly once, when the line becomes perpendicular to their
/// difference; events are ordered by an exact angular comparison of the
/// difference vectors, which all point into the upper half-plane because
/// labels follow decreasing height.
pub fn sweep_sequence(x: &PointConfig) -> Result<CircularSequence, PointError> {
    let n = x.n();
    struct Event {
        dx: BigRational,
        dy: BigRational,
        a: u8,
        b: u8,
    }
    let mut events = Vec::with_capacity(choose2(n) as usize);
    for a in 1..=n {
        for b in a + 1..=n {
            let (pa, pb) = (x.point(a), x.point(b));
            events.push(Event {
                dx: &pa.x - &pb.x,
                dy: &pa.y - &pb.y,
                a,
                b,
            });
        }
    }
    events.sort_by(|e1, e2| {
        let cross = &e1.dx * &e2.dy - &e1.dy * &e2.dx;
        match cross.cmp(&BigRational::zero()) {
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            // Parallel events involve four distinct points and commute;
            // fix label order for determinism.
            Ordering::Equal => (e1.a, e1.b).cmp(&(e2.a, e2.b)),
        }
    });

    let mut builder = SequenceBuilder::new(n);
    for event in &events {
        let pa = builder.position_of(event.a);
        let pb = builder.position_of(event.b);
        if pb != pa + 1 {
            return Err(PointError::SweepDegeneracy {
                detail: format!(
                    "points {} and {} are not adjacent when their swap comes due",
                    event.a, event.b
                ),
            });
        }
        builder.swap_ascent(pa);
    }
    Ok(builder.finish())
}

/// Per-k counts of separable subsets together with the switch vector they
/// came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSetCounts {
    n: u8,
    switch_counts: Vec<u32>,
}

impl KSetCounts {
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Largest admissible k, `(n-1)/2` rounded down.
    pub fn max_k(&self) -> u8 {
        (self.n - 1) / 2
    }

    /// Switch tallies `s_1 .. s_{n-1}` of the sweep sequence.
    pub fn switch_counts(&self) -> &[u32] {
        &self.switch_counts
    }

    fn check_k(&self, k: u8) -> Result<(), KsetError> {
        if k == 0 || k > self.max_k() {
            return Err(KsetError::KOutOfRange { k, n: self.n });
        }
        Ok(())
    }

    /// Left k-sets: one more than the switches at position k.
    pub fn f_left(&self, k: u8) -> Result<u64, KsetError> {
        self.check_k(k)?;
        Ok(u64::from(self.switch_counts[k as usize - 1]) + 1)
    }

    /// Right k-sets: one more than the switches at position n-k.
    pub fn f_right(&self, k: u8) -> Result<u64, KsetError> {
        self.check_k(k)?;
        Ok(u64::from(self.switch_counts[(self.n - k) as usize - 1]) + 1)
    }

    /// All k-sets: switches at position k plus switches at position n-k.
    pub fn f_total(&self, k: u8) -> Result<u64, KsetError> {
        self.check_k(k)?;
        Ok(u64::from(self.switch_counts[k as usize - 1])
            + u64::from(self.switch_counts[(self.n - k) as usize - 1]))
    }
}

/// Sweeps the configuration and packages the counts.
pub fn kset_counts(x: &PointConfig) -> Result<KSetCounts, PointError> {
    let seq = sweep_sequence(x)?;
    Ok(KSetCounts {
        n: x.n(),
        switch_counts: seq.switch_counts(),
    })
}

/// A pair of subsets selecting which k to count as left k-sets and which as
/// right k-sets.
#[derive(Clone, PartialEq, Eq)]
pub struct LRSpec {
    left: Vec<u8>,
    right: Vec<u8>,
}

impl LRSpec {
    /// Sorts and deduplicates; zero elements are rejected.
    pub fn new(mut left: Vec<u8>, mut right: Vec<u8>) -> Result<Self, KsetError> {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        if left.first() == Some(&0) || right.first() == Some(&0) {
            return Err(KsetError::SpecElementOutOfRange { element: 0, max: 0 });
        }
        Ok(LRSpec { left, right })
    }

    pub fn left(&self) -> &[u8] {
        &self.left
    }

    pub fn right(&self) -> &[u8] {
        &self.right
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    /// Requires every element at most `(n-1)/2`; the hypothesis for
    /// counting.
    pub fn validate(&self, n: u8) -> Result<(), KsetError> {
        let max = (n - 1) / 2;
        for &element in self.left.iter().chain(&self.right) {
            if element > max {
                return Err(KsetError::SpecElementOutOfRange { element, max });
            }
        }
        Ok(())
    }

    /// Looser bound used for complements: left elements may reach `n/2`.
    fn validate_for_gates(&self, n: u8) -> Result<(), KsetError> {
        let left_max = n / 2;
        let right_max = (n - 1) / 2;
        for &element in &self.left {
            if element > left_max {
                return Err(KsetError::SpecElementOutOfRange {
                    element,
                    max: left_max,
                });
            }
        }
        for &element in &self.right {
            if element > right_max {
                return Err(KsetError::SpecElementOutOfRange {
                    element,
                    max: right_max,
                });
            }
        }
        Ok(())
    }

    /// Gate positions `left ∪ { n-k : k in right }`; disjoint by the size
    /// bounds.
    pub fn gates(&self, n: u8) -> Result<GateSet, KsetError> {
        self.validate_for_gates(n)?;
        if self.is_empty() {
            return Err(KsetError::EmptySpec);
        }
        let mut positions: Vec<u8> = self.left.clone();
        positions.extend(self.right.iter().map(|&k| n - k));
        positions.sort_unstable();
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        Ok(composition_gates_unchecked(n, positions))
    }

    /// Complement spec: left inside `1..=n/2`, right inside `1..=(n-1)/2`.
    /// The gate sets of a spec and its complement partition `1..n`.
    pub fn complement(&self, n: u8) -> LRSpec {
        let left = (1..=n / 2).filter(|k| !self.left.contains(k)).collect();
        let right = (1..=(n - 1) / 2)
            .filter(|k| !self.right.contains(k))
            .collect();
        LRSpec { left, right }
    }

    fn union_size(&self, other_side: &[u8]) -> usize {
        let mut all: Vec<u8> = self.left.iter().chain(other_side).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    }

    fn intersection_size(&self) -> usize {
        self.left.iter().filter(|k| self.right.contains(k)).count()
    }
}

impl fmt::Debug for LRSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LRSpec(L={:?}, R={:?})", self.left, self.right)
    }
}

/// Number of subsets appearing as a left k-set for `k` in the left list or
/// a right k-set for `k` in the right list.
///
/// Evaluated two ways — directly from the per-k counts, and from the switch
/// vector with the overlap correction — and any disagreement is surfaced as
/// an error rather than reconciled.
pub fn f_lr(counts: &KSetCounts, spec: &LRSpec) -> Result<u64, KsetError> {
    let n = counts.n();
    spec.validate(n)?;
    let mut direct = 0u64;
    for &k in spec.left() {
        if spec.right().contains(&k) {
            direct += counts.f_total(k)?;
        } else {
            direct += counts.f_left(k)?;
        }
    }
    for &k in spec.right() {
        if !spec.left().contains(&k) {
            direct += counts.f_right(k)?;
        }
    }

    let s = counts.switch_counts();
    let mut via_switches = 0u64;
    for &k in spec.left() {
        via_switches += u64::from(s[k as usize - 1]);
    }
    for &k in spec.right() {
        via_switches += u64::from(s[(n - k) as usize - 1]);
    }
    via_switches += (spec.union_size(spec.right()) - spec.intersection_size()) as u64;

    if direct != via_switches {
        return Err(KsetError::FormulaMismatch {
            direct,
            via_switches,
        });
    }
    Ok(direct)
}

/// As [`f_lr`], sweeping the configuration first.
pub fn f_lr_config(x: &PointConfig, spec: &LRSpec) -> Result<u64, KsetError> {
    f_lr(&kset_counts(x)?, spec)
}

/// The composition determined by a spec: parts are the gaps of the gate set
/// `left ∪ { n-k : k in right }`, so the left elements are the left partial
/// sums and the right elements the right partial sums.
pub fn composition_from_lr(spec: &LRSpec, n: u8) -> Result<Composition, KsetError> {
    Ok(composition_from_gates(&spec.gates(n)?))
}

/// Complement spec; see [`LRSpec::complement`].
pub fn complement_lr(spec: &LRSpec, n: u8) -> LRSpec {
    spec.complement(n)
}

/// Outcome of the two-sided diameter check for one spec on one
/// configuration.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub n: u8,
    pub spec: LRSpec,
    pub complement: LRSpec,
    /// Diameter of the polytope of the spec's composition.
    pub lower_diameter: u32,
    /// The counted value minus the union/intersection correction.
    pub middle: u64,
    /// `C(n,2)` minus the complement polytope's diameter.
    pub upper_bound: u64,
    pub complement_diameter: Option<u32>,
    /// Set when the complement has no gates and its diameter is taken as 0.
    pub complement_empty: bool,
    pub f_lr_value: u64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl SandwichReport {
    pub fn ok(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Checks that the corrected count is pinned between the diameter of the
/// spec's polytope and the step total minus the complement's diameter.
pub fn sandwich_check(
    x: &PointConfig,
    spec: &LRSpec,
    budget: &Budget,
) -> Result<SandwichReport, KsetError> {
    let n = x.n();
    spec.validate(n)?;
    if spec.is_empty() {
        return Err(KsetError::EmptySpec);
    }
    let counts = kset_counts(x)?;
    let f_value = f_lr(&counts, spec)?;
    let correction = (spec.union_size(spec.right()) - spec.intersection_size()) as u64;
    let middle = f_value - correction;

    let lower_diameter = diameter(&composition_from_lr(spec, n)?, budget)?;
    let complement = spec.complement(n);
    let (complement_diameter, complement_empty) = if complement.is_empty() {
        (None, true)
    } else {
        (
            Some(diameter(&composition_from_lr(&complement, n)?, budget)?),
            false,
        )
    };
    let upper_bound = u64::from(choose2(n)) - u64::from(complement_diameter.unwrap_or(0));
    Ok(SandwichReport {
        n,
        spec: spec.clone(),
        complement,
        lower_diameter,
        middle,
        upper_bound,
        complement_diameter,
        complement_empty,
        f_lr_value: f_value,
        lower_ok: u64::from(lower_diameter) <= middle,
        upper_ok: middle <= upper_bound,
    })
}

fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// An n-point configuration achieving the minimum possible number of
/// k-sets: a rational approximation of a regular (2k+1)-gon with the
/// remaining points clustered near its center on a tiny parabola. The
/// generator retries with finer precision and a different rotation until
/// the result validates and the brute-force count confirms `2k+1` k-sets.
pub fn gon_configuration(k: u8, n: u8) -> PointConfig {
    assert!(k >= 1, "k must be positive");
    assert!(n > 2 * k, "need n >= 2k+1");
    assert!(n as usize <= MAX_N as usize, "n exceeds the word-size cap");
    let corners = 2 * k + 1;
    let cluster = n - corners;
    for attempt in 0u32.. {
        let denom: i64 = 10_000i64 << attempt.min(16);
        let rot = 0.37 + 0.11 * f64::from(attempt);
        let mut points = Vec::with_capacity(n as usize);
        for j in 0..corners {
            let angle = rot + 2.0 * std::f64::consts::PI * f64::from(j) / f64::from(corners);
            let x = (angle.cos() * denom as f64).round() as i64;
            let y = (angle.sin() * denom as f64).round() as i64;
            points.push(Point::new(ratio(x, denom), ratio(y, denom)));
        }
        let spread = 100_000 * (i64::from(cluster) + 1) * (i64::from(attempt) + 1);
        for j in 0..cluster {
            let t = i64::from(j) + 1;
            points.push(Point::new(
                ratio(t, spread),
                ratio(3 * t * t, spread * spread),
            ));
        }
        let Ok(config) = PointConfig::new(points) else {
            continue;
        };
        match crate::oracle::ksets_bruteforce(&config, k) {
            Ok(counts) if counts.total == 2 * u64::from(k) + 1 => return config,
            _ => continue,
        }
    }
    unreachable!("gon generation retries until it validates");
}

/// A deterministic rational perturbation of magnitude below `1/q`, for
/// nudging degenerate inputs into general position before re-validating.
pub fn perturbed(points: &[Point], q: u64) -> Vec<Point> {
    let count = BigInt::from(points.len() as u64 + 1);
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let t = BigInt::from(i as u64 + 1);
            let dx = BigRational::new(t.clone(), &count * BigInt::from(q));
            let dy = BigRational::new(&t * &t, &count * &count * BigInt::from(q));
            Point::new(&p.x + dx, &p.y + dy)
        })
        .collect()
}

/// A random integer-coordinate configuration in general position,
/// deterministic in `seed`; degenerate draws are rejected and redrawn.
pub fn random_config(n: u8, seed: u64) -> PointConfig {
    assert!((2..=MAX_N).contains(&n), "n out of range");
    let mut rng = SplitMix64::new(
        seed.wrapping_mul(0x2545_f491_4f6c_dd1d)
            .wrapping_add(u64::from(n)),
    );
    loop {
        let points: Vec<Point> = (0..n)
            .map(|_| Point::from_integers(rng.signed(1_000_000), rng.signed(1_000_000)))
            .collect();
        if let Ok(config) = PointConfig::new(points) {
            return config;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ksets_bruteforce;
    use crate::perm_core::validate_sequence;
    use proptest::proptest;

    fn triangle() -> PointConfig {
        load_points("0 0\n1 2\n3 1").unwrap()
    }

    #[test]
    fn load_examples() {
        assert_eq!(triangle().n(), 3);
        assert!(matches!(
            load_points("0 0\n1 1\n2 2"),
            Err(PointError::CollinearTriple { a: 1, b: 2, c: 3 })
        ));
        assert!(matches!(
            load_points("0 0\n1 0"),
            Err(PointError::HorizontalPair {
                first: 1,
                second: 2
            })
        ));
        let cfg = load_points("# comment\n3/7 -2\n\n0 1 # trailing\n").unwrap();
        assert_eq!(cfg.n(), 2);
        assert!(matches!(
            load_points("1/0 2\n0 1"),
            Err(PointError::Parse { .. })
        ));
        assert!(matches!(
            load_points("1 2 3\n0 1"),
            Err(PointError::Parse { .. })
        ));
    }

    #[test]
    fn labels_follow_decreasing_height() {
        let cfg = triangle();
        // Input points (0,0), (1,2), (3,1) sort to labels 1=(1,2), 2=(3,1), 3=(0,0).
        assert_eq!(cfg.point(1).y, ratio(2, 1));
        assert_eq!(cfg.point(2).y, ratio(1, 1));
        assert_eq!(cfg.point(3).y, ratio(0, 1));
    }

    #[test]
    fn sweep_is_a_valid_sequence_member() {
        let budget = Budget::default();
        let seq = sweep_sequence(&triangle()).unwrap();
        validate_sequence(&seq).unwrap();
        let members: Vec<Vec<u8>> = crate::oracle::enumerate_sequences(3, &budget)
            .unwrap()
            .map(|s| s.events().iter().map(|e| e.position).collect())
            .collect();
        let ours: Vec<u8> = seq.events().iter().map(|e| e.position).collect();
        assert!(members.contains(&ours));
    }

    #[test]
    fn sweep_is_enumerable_up_to_n5() {
        let budget = Budget::default();
        for n in 3..=5u8 {
            let known: std::collections::HashSet<Vec<u8>> =
                crate::oracle::enumerate_sequences(n, &budget)
                    .unwrap()
                    .map(|s| s.events().iter().map(|e| e.position).collect())
                    .collect();
            for seed in 0..6u64 {
                let cfg = random_config(n, seed);
                let seq = sweep_sequence(&cfg).unwrap();
                let walk: Vec<u8> = seq.events().iter().map(|e| e.position).collect();
                assert!(known.contains(&walk), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn sweep_switch_total_is_pair_count() {
        for seed in 0..10u64 {
            for n in 4..=9u8 {
                let cfg = random_config(n, seed);
                let seq = sweep_sequence(&cfg).unwrap();
                let total: u32 = seq.switch_counts().iter().sum();
                assert_eq!(total, choose2(n));
            }
        }
    }

    #[test]
    fn triangle_counts() {
        let counts = kset_counts(&triangle()).unwrap();
        assert_eq!(counts.f_total(1).unwrap(), 3);
        assert_eq!(
            counts.f_left(1).unwrap() + counts.f_right(1).unwrap(),
            5,
            "the top and bottom singletons count on both sides"
        );
        let brute = ksets_bruteforce(&triangle(), 1).unwrap();
        assert_eq!(brute.total, 3);
        assert_eq!(brute.left + brute.right, 5);
        assert_eq!(brute.left, counts.f_left(1).unwrap());
        assert_eq!(brute.right, counts.f_right(1).unwrap());
    }

    #[test]
    fn pentagon_has_five_two_sets() {
        let cfg = gon_configuration(2, 5);
        let counts = kset_counts(&cfg).unwrap();
        assert_eq!(counts.f_total(2).unwrap(), 5);
    }

    #[test]
    fn sweep_matches_bruteforce_on_random_configs() {
        for seed in 0..12u64 {
            let n = 6 + (seed % 3) as u8;
            let cfg = random_config(n, seed);
            let counts = kset_counts(&cfg).unwrap();
            for k in 1..=counts.max_k() {
                let brute = ksets_bruteforce(&cfg, k).unwrap();
                assert_eq!(
                    brute.left,
                    counts.f_left(k).unwrap(),
                    "n={n} seed={seed} k={k}"
                );
                assert_eq!(brute.right, counts.f_right(k).unwrap());
                assert_eq!(brute.total, counts.f_total(k).unwrap());
                assert_eq!(brute.left + brute.right, brute.total + 2);
            }
        }
    }

    #[test]
    fn f_lr_examples() {
        let cfg = random_config(8, 7);
        let counts = kset_counts(&cfg).unwrap();
        for k in 1..=counts.max_k() {
            let spec = LRSpec::new(vec![k], vec![k]).unwrap();
            assert_eq!(f_lr(&counts, &spec).unwrap(), counts.f_total(k).unwrap());
        }
        let spec = LRSpec::new(vec![1, 2], vec![1]).unwrap();
        assert!(f_lr(&counts, &spec).is_ok());

        let tri_counts = kset_counts(&triangle()).unwrap();
        let spec = LRSpec::new(vec![1], vec![]).unwrap();
        assert_eq!(
            f_lr(&tri_counts, &spec).unwrap(),
            tri_counts.f_left(1).unwrap()
        );

        let bad = LRSpec::new(vec![5], vec![]).unwrap();
        assert!(matches!(
            f_lr(&counts, &bad),
            Err(KsetError::SpecElementOutOfRange { element: 5, .. })
        ));
    }

    #[test]
    fn composition_and_complement_examples() {
        let spec = LRSpec::new(vec![1, 2], vec![1]).unwrap();
        let c = composition_from_lr(&spec, 8).unwrap();
        assert_eq!(c.parts(), &[1, 1, 5, 1]);

        let spec = LRSpec::new(vec![2], vec![2]).unwrap();
        let c = composition_from_lr(&spec, 5).unwrap();
        assert_eq!(c.parts(), &[2, 1, 2]);

        let empty = LRSpec::new(vec![], vec![]).unwrap();
        assert!(matches!(
            composition_from_lr(&empty, 5),
            Err(KsetError::EmptySpec)
        ));

        let spec = LRSpec::new(vec![1, 2], vec![1]).unwrap();
        let comp = complement_lr(&spec, 8);
        assert_eq!(comp.left(), &[3, 4]);
        assert_eq!(comp.right(), &[2, 3]);
        let c = composition_from_lr(&comp, 8).unwrap();
        assert_eq!(c.parts(), &[3, 1, 1, 1, 2]);

        let full = LRSpec::new(vec![1, 2, 3, 4], vec![1, 2, 3]).unwrap();
        let comp = complement_lr(&full, 8);
        assert!(comp.is_empty());
    }

    #[test]
    fn gate_partition_property_up_to_n10() {
        for n in 3..=10u8 {
            let max = (n - 1) / 2;
            for lmask in 0u16..(1 << max) {
                for rmask in 0u16..(1 << max) {
                    let left: Vec<u8> = (1..=max).filter(|&k| lmask >> (k - 1) & 1 == 1).collect();
                    let right: Vec<u8> = (1..=max).filter(|&k| rmask >> (k - 1) & 1 == 1).collect();
                    let spec = LRSpec::new(left, right).unwrap();
                    let comp = spec.complement(n);
                    let mut all: Vec<u8> = Vec::new();
                    if !spec.is_empty() {
                        all.extend(spec.gates(n).unwrap().positions());
                    }
                    if !comp.is_empty() {
                        all.extend(comp.gates(n).unwrap().positions());
                    }
                    all.sort_unstable();
                    let expected: Vec<u8> = (1..n).collect();
                    assert_eq!(all, expected, "n={n} spec={spec:?}");
                }
            }
        }
    }

    #[test]
    fn sandwich_on_the_pentagon() {
        let budget = Budget::default();
        let cfg = gon_configuration(2, 5);
        let spec = LRSpec::new(vec![2], vec![2]).unwrap();
        let report = sandwich_check(&cfg, &spec, &budget).unwrap();
        assert_eq!(report.lower_diameter, 5);
        assert_eq!(report.middle, 5, "f(2) = 5 meets the lower bound");
        assert!(report.ok());
    }

    #[test]
    fn sandwich_with_empty_complement() {
        let budget = Budget::default();
        let cfg = random_config(5, 3);
        let spec = LRSpec::new(vec![1, 2], vec![1, 2]).unwrap();
        let report = sandwich_check(&cfg, &spec, &budget).unwrap();
        assert!(report.complement_empty);
        assert_eq!(report.upper_bound, u64::from(choose2(5)));
        assert!(report.ok());
    }

    #[test]
    fn gon_examples() {
        let cfg = gon_configuration(1, 3);
        assert_eq!(kset_counts(&cfg).unwrap().f_total(1).unwrap(), 3);
        let cfg = gon_configuration(2, 8);
        assert_eq!(ksets_bruteforce(&cfg, 2).unwrap().total, 5);
    }

    #[test]
    fn perturbation_repairs_degenerate_input() {
        let raw = parse_points("0 0\n1 0\n2 1\n1 1").unwrap();
        assert!(PointConfig::new(raw.clone()).is_err());
        let moved = perturbed(&raw, 1_000);
        let cfg = PointConfig::new(moved).unwrap();
        assert_eq!(cfg.n(), 4);
    }

    proptest! {
        #[test]
        fn identities_hold_on_random_configs(seed in 0u64..64) {
            let n = 5 + (seed % 5) as u8;
            let cfg = random_config(n, seed);
            let counts = kset_counts(&cfg).unwrap();
            for k in 1..=counts.max_k() {
                let (l, r, f) = (
                    counts.f_left(k).unwrap(),
                    counts.f_right(k).unwrap(),
                    counts.f_total(k).unwrap(),
                );
                assert_eq!(l + r, f + 2);
            }
        }
    }
}

//! Gate profiles, switch classification, and bounds on gate-switch counts.
//!
//! A gate set marks positions of a word at which switches are counted. Every
//! switch across a gate moves each of its two values either toward or away
//! from that value's destination in the reverse word; a switch is *good*
//! when both values move toward their destinations and *bad* when exactly
//! one does. Good switches in any circular sequence number exactly the sum
//! of the gate distances, which pins the count of gate switches between that
//! sum and the sum plus `l*r` (gates strictly left of the middle times the
//! rest). The constructive two-phase walk realizes the upper bound.

use std::fmt;

use thiserror::Error;

use crate::perm_core::{
    validate_sequence, CircularSequence, PermError, Permutation, SequenceBuilder,
    SequenceViolation, MAX_N,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GateSetError {
    #[error("gate set must contain at least one position")]
    Empty,
    #[error("word size {0} out of range (need 2..={MAX_N})")]
    SizeOutOfRange(u8),
    #[error("gate position {position} out of range 1..={max}")]
    PositionOutOfRange { position: u8, max: u8 },
    #[error("gate positions must be strictly increasing")]
    NotStrictlyIncreasing,
    #[error("could not parse gate position {0:?}")]
    Parse(String),
}

/// Strictly increasing gate positions `y_1 < .. < y_g` inside `1..n-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GateSet {
    n: u8,
    positions: Vec<u8>,
}

impl GateSet {
    pub fn new(n: u8, positions: Vec<u8>) -> Result<Self, GateSetError> {
        if !(2..=MAX_N).contains(&n) {
            return Err(GateSetError::SizeOutOfRange(n));
        }
        if positions.is_empty() {
            return Err(GateSetError::Empty);
        }
        for pair in positions.windows(2) {
            if pair[0] >= pair[1] {
                return Err(GateSetError::NotStrictlyIncreasing);
            }
        }
        for &position in &positions {
            if position == 0 || position >= n {
                return Err(GateSetError::PositionOutOfRange {
                    position,
                    max: n - 1,
                });
            }
        }
        Ok(GateSet { n, positions })
    }

    /// Parses comma-separated 1-based positions, e.g. `"1,4,6,7"`.
    pub fn parse(n: u8, text: &str) -> Result<Self, GateSetError> {
        let mut positions = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            positions.push(
                token
                    .parse::<u8>()
                    .map_err(|_| GateSetError::Parse(token.to_string()))?,
            );
        }
        GateSet::new(n, positions)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn positions(&self) -> &[u8] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, position: u8) -> bool {
        self.positions.binary_search(&position).is_ok()
    }

    /// The gate set reflected through the middle: positions `n - y_j`.
    pub fn mirrored(&self) -> GateSet {
        let positions: Vec<u8> = self.positions.iter().rev().map(|&y| self.n - y).collect();
        GateSet {
            n: self.n,
            positions,
        }
    }
}

impl fmt::Debug for GateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GateSet(n={}, y={:?})", self.n, self.positions)
    }
}

/// Gate set from composition partial sums, which are strictly increasing and
/// in range by construction.
pub(crate) fn composition_gates_unchecked(n: u8, positions: Vec<u8>) -> GateSet {
    debug_assert!(GateSet::new(n, positions.clone()).is_ok());
    GateSet { n, positions }
}

/// Derived data for a gate set: the distance of each gate from the nearer
/// end, those distances sorted, the left/right split around the middle, and
/// the per-value crossing costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateProfile {
    /// `x_j = min(y_j, n - y_j)` per gate, in gate order.
    pub distances: Vec<u8>,
    /// `distances` sorted non-increasing.
    pub sorted_desc: Vec<u8>,
    /// Number of gates strictly left of `n/2`.
    pub left_count: u8,
    /// Remaining gates (a gate exactly at `n/2` counts here).
    pub right_count: u8,
    /// For each value `1..=n`, the number of gates it must cross to reach
    /// its destination in the reverse word.
    pub cost_per_value: Vec<u8>,
    /// Total crossing cost, always twice the distance sum.
    pub total_cost: u32,
}

/// Computes the [`GateProfile`] of a gate set.
pub fn gate_profile(gs: &GateSet) -> GateProfile {
    let n = gs.n();
    let distances: Vec<u8> = gs.positions().iter().map(|&y| y.min(n - y)).collect();
    let mut sorted_desc = distances.clone();
    sorted_desc.sort_unstable_by(|a, b| b.cmp(a));
    let left_count = gs
        .positions()
        .iter()
        .filter(|&&y| u16::from(y) * 2 < u16::from(n))
        .count() as u8;
    let right_count = gs.len() as u8 - left_count;
    let cost_per_value: Vec<u8> = (1..=n)
        .map(|value| {
            let reach = value.min(n + 1 - value);
            distances.iter().filter(|&&x| x >= reach).count() as u8
        })
        .collect();
    let total_cost = cost_per_value.iter().map(|&c| u32::from(c)).sum();
    debug_assert_eq!(
        total_cost,
        2 * distances.iter().map(|&x| u32::from(x)).sum::<u32>()
    );
    GateProfile {
        distances,
        sorted_desc,
        left_count,
        right_count,
        cost_per_value,
        total_cost,
    }
}

/// Lower and upper bounds for the minimum number of gate switches over all
/// circular sequences: `(sum of distances, sum + l*r)`.
pub fn switch_bounds(gs: &GateSet) -> (u32, u32) {
    let profile = gate_profile(gs);
    let lower: u32 = profile.distances.iter().map(|&x| u32::from(x)).sum();
    let upper = lower + u32::from(profile.left_count) * u32::from(profile.right_count);
    (lower, upper)
}

/// Classification of a single switch relative to a gate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchClass {
    /// At a gate, both values move toward their destinations.
    Good,
    /// At a gate, exactly one value moves toward its destination.
    Bad,
    /// Not at a gate position.
    NonGate,
}

/// Classifies the swap of the ascent at `position` in `p`. The value `v`
/// is heading for position `n - v + 1`; the left value moves right and the
/// right value moves left, and a gate switch always helps at least one of
/// them.
pub fn classify_switch(
    p: &Permutation,
    position: u8,
    gs: &GateSet,
) -> Result<SwitchClass, PermError> {
    let n = p.n();
    if position == 0 || position >= n {
        return Err(PermError::PositionOutOfRange {
            position,
            max: n - 1,
        });
    }
    let (a, b) = (p.value_at(position), p.value_at(position + 1));
    if a > b {
        return Err(PermError::NotAnAscent {
            position,
            left: a,
            right: b,
        });
    }
    if !gs.contains(position) {
        return Ok(SwitchClass::NonGate);
    }
    let a_toward = a <= n - position;
    let b_toward = b > n - position;
    debug_assert!(a_toward || b_toward, "gate switch helps at least one value");
    if a_toward && b_toward {
        Ok(SwitchClass::Good)
    } else {
        Ok(SwitchClass::Bad)
    }
}

/// Gate-switch totals for a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateSwitchTally {
    pub total: u32,
    pub good: u32,
    pub bad: u32,
}

/// Counts and classifies the gate switches of a validated sequence.
pub fn count_switches(
    seq: &CircularSequence,
    gs: &GateSet,
) -> Result<GateSwitchTally, SequenceViolation> {
    assert_eq!(seq.n(), gs.n(), "sequence and gate set sizes must agree");
    validate_sequence(seq)?;
    let mut tally = GateSwitchTally {
        total: 0,
        good: 0,
        bad: 0,
    };
    for (i, event) in seq.events().iter().enumerate() {
        let before = &seq.permutations()[i];
        match classify_switch(before, event.position, gs).expect("validated ascent") {
            SwitchClass::Good => {
                tally.total += 1;
                tally.good += 1;
            }
            SwitchClass::Bad => {
                tally.total += 1;
                tally.bad += 1;
            }
            SwitchClass::NonGate => {}
        }
    }
    Ok(tally)
}

/// A circular sequence built in two phases, with the boundary recorded so
/// the phase-one endpoint and per-phase switches stay inspectable.
#[derive(Debug, Clone)]
pub struct TwoPhaseSequence {
    pub sequence: CircularSequence,
    pub phase_one_steps: usize,
}

impl TwoPhaseSequence {
    /// The permutation reached when phase one completes.
    pub fn phase_one_endpoint(&self) -> &Permutation {
        &self.sequence.permutations()[self.phase_one_steps]
    }
}

/// Builds a circular sequence whose gate-switch count stays within the
/// bounds of [`switch_bounds`].
///
/// Phase one parks the smallest values on the gates right-to-left and the
/// largest values on the remaining gates; phase two sweeps each large value
/// to the front, re-parking displaced values one gate to the right as it
/// goes, so that every phase-two gate switch is good. The case with more
/// gates on the left than the right runs the same construction on the
/// mirrored gate set and maps the walk back through the reflection
/// `position j -> n - j`, `value v -> n + 1 - v`.
pub fn two_phase_sequence(gs: &GateSet) -> TwoPhaseSequence {
    let profile = gate_profile(gs);
    if profile.left_count <= profile.right_count {
        construct_left_light(gs)
    } else {
        let mirrored = gs.mirrored();
        let tp = construct_left_light(&mirrored);
        let positions: Vec<u8> = tp
            .sequence
            .events()
            .iter()
            .map(|event| gs.n() - event.position)
            .collect();
        let sequence = CircularSequence::from_switch_positions(gs.n(), &positions)
            .expect("mirror image of a valid sequence is valid");
        TwoPhaseSequence {
            sequence,
            phase_one_steps: tp.phase_one_steps,
        }
    }
}

/// The construction for gate sets with `left_count <= right_count`.
fn construct_left_light(gs: &GateSet) -> TwoPhaseSequence {
    let n = gs.n();
    let profile = gate_profile(gs);
    let left = profile.left_count as usize;
    let right = profile.right_count as usize;
    let gates = gs.positions();
    let mut builder = SequenceBuilder::new(n);

    // Phase one: values 1..=right go out to the gates right-to-left, then
    // the top `left` values come down onto the remaining gates.
    for v in 1..=right as u8 {
        let target = gates[right - v as usize];
        while builder.position_of(v) < target {
            let p = builder.position_of(v);
            builder.swap_ascent(p);
        }
    }
    for t in 0..left as u8 {
        let v = n - t;
        let target = gates[right + t as usize];
        while builder.position_of(v) > target {
            let p = builder.position_of(v) - 1;
            builder.swap_ascent(p);
        }
    }
    let phase_one_steps = builder.steps();

    // Phase two: sweep n, n-1, .. to the front. Each time the sweep crosses
    // a gate (or lands), the displaced value hops right to the next free
    // gate, keeping small values parked where later sweeps cross.
    for i in 0..n / 2 {
        let v = n - i;
        let goal = i + 1;
        while builder.position_of(v) > goal {
            let p = builder.position_of(v) - 1;
            let displaced = builder.value_at(p);
            builder.swap_ascent(p);
            if gs.contains(p) || p == goal {
                hop_right(&mut builder, gs, displaced);
            }
        }
    }

    // Any leftover ascents are flushed smallest-position-first; the walk is
    // forced to finish in exactly C(n,2) steps either way.
    while !builder.is_reversed() {
        let p = (1..n)
            .find(|&j| builder.value_at(j) < builder.value_at(j + 1))
            .expect("non-reversed word has an ascent");
        builder.swap_ascent(p);
    }

    TwoPhaseSequence {
        sequence: builder.finish(),
        phase_one_steps,
    }
}

/// Bubbles `value` rightward past larger fillers until it reaches a gate,
/// the end of the word, or a smaller value.
fn hop_right(builder: &mut SequenceBuilder, gs: &GateSet, value: u8) {
    loop {
        let q = builder.position_of(value);
        if q >= builder.n() || gs.contains(q) {
            break;
        }
        if builder.value_at(q + 1) < value {
            break;
        }
        builder.swap_ascent(q);
    }
}

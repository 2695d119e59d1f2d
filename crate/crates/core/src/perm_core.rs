//! Permutation words and validated circular sequences.
//!
//! A permutation is a word on `1..=n` in one-line notation. A circular
//! sequence walks from the identity word to the reverse word through
//! `n*(n-1)/2` steps, each an adjacent transposition that swaps an ascent,
//! and records one [`SwitchEvent`] per step. Positions and values are
//! 1-based throughout the public API; any 0-based indexing is internal.

use std::fmt;

use thiserror::Error;

use crate::util::choose2;

/// Hard ceiling on word size. Downstream state spaces are factorial and the
/// polytope code packs one coordinate per nibble, so 16 gives desk-scale
/// headroom without inviting runaway inputs.
pub const MAX_N: u8 = 16;

/// Number of steps in a circular sequence on `[n]`, i.e. `n` choose 2.
pub fn step_count(n: u8) -> u32 {
    choose2(n)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("word size {0} out of range (need 2..={MAX_N})")]
    InvalidSize(usize),
    #[error("word is not a bijection on 1..={0}")]
    NotBijection(u8),
    #[error("position {position} out of range 1..={max}")]
    PositionOutOfRange { position: u8, max: u8 },
    #[error("descent at position {position}: {left} > {right}")]
    NotAnAscent { position: u8, left: u8, right: u8 },
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    /// The identity word `1 2 .. n`.
    pub fn identity(n: u8) -> Result<Self, PermError> {
        check_size(n)?;
        Ok(Permutation {
            word: (1..=n).collect(),
        })
    }

    /// The reverse word `n n-1 .. 1`.
    pub fn reversed(n: u8) -> Result<Self, PermError> {
        check_size(n)?;
        Ok(Permutation {
            word: (1..=n).rev().collect(),
        })
    }

    /// Builds a permutation from one-line notation, validating that the word
    /// is a bijection on `1..=n`.
    pub fn from_word(word: Vec<u8>) -> Result<Self, PermError> {
        check_size(word.len().try_into().unwrap_or(u8::MAX))?;
        let n = word.len() as u8;
        let mut seen = [false; MAX_N as usize + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v as usize] {
                return Err(PermError::NotBijection(n));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { word })
    }

    /// A uniformly shuffled word, deterministic in `seed`.
    pub fn shuffled(n: u8, seed: u64) -> Result<Self, PermError> {
        let mut p = Permutation::identity(n)?;
        let mut rng = crate::util::SplitMix64::new(seed);
        for i in (1..p.word.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            p.word.swap(i, j);
        }
        Ok(p)
    }

    pub fn n(&self) -> u8 {
        self.word.len() as u8
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Value at a 1-based position. Panics if out of range.
    pub fn value_at(&self, position: u8) -> u8 {
        self.word[position as usize - 1]
    }

    /// 1-based position of a value. Panics if the value is not in `1..=n`.
    pub fn position_of(&self, value: u8) -> u8 {
        self.word
            .iter()
            .position(|&v| v == value)
            .map(|i| i as u8 + 1)
            .expect("value in 1..=n")
    }

    /// Swaps the entries at `position` and `position + 1`, requiring an
    /// ascent there. The inversion count increases by exactly one.
    pub fn apply_ascent_swap(&self, position: u8) -> Result<Self, PermError> {
        if position == 0 || position >= self.n() {
            return Err(PermError::PositionOutOfRange {
                position,
                max: self.n() - 1,
            });
        }
        let i = position as usize - 1;
        let (left, right) = (self.word[i], self.word[i + 1]);
        if left > right {
            return Err(PermError::NotAnAscent {
                position,
                left,
                right,
            });
        }
        let mut word = self.word.clone();
        word.swap(i, i + 1);
        Ok(Permutation { word })
    }

    /// 1-based positions `j` with `word[j] < word[j+1]`.
    pub fn ascent_positions(&self) -> impl Iterator<Item = u8> + '_ {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1])
            .map(|(i, _)| i as u8 + 1)
    }

    pub fn inversions(&self) -> u32 {
        let mut count = 0;
        for i in 0..self.word.len() {
            for j in i + 1..self.word.len() {
                if self.word[i] > self.word[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i as u8 + 1)
    }

    pub fn is_reversed(&self) -> bool {
        let n = self.n();
        self.word.iter().enumerate().all(|(i, &v)| v == n - i as u8)
    }

    /// The word read backwards.
    pub fn reverse_word(&self) -> Self {
        let mut word = self.word.clone();
        word.reverse();
        Permutation { word }
    }
}

fn check_size(n: u8) -> Result<(), PermError> {
    if !(2..=MAX_N).contains(&n) {
        return Err(PermError::InvalidSize(n as usize));
    }
    Ok(())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.word {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// One step of a circular sequence: at `step`, the values `values.0 <
/// values.1` sitting at `position` and `position + 1` were exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwitchEvent {
    /// 1-based step index.
    pub step: u16,
    /// 1-based position of the left entry of the swapped pair.
    pub position: u8,
    /// The swapped values, ascending order as they stood before the swap.
    pub values: (u8, u8),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceViolation {
    #[error("expected {expected} permutations for n={n}, found {found}")]
    WrongLength {
        n: u8,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} events for n={n}, found {found}")]
    WrongEventCount {
        n: u8,
        expected: usize,
        found: usize,
    },
    #[error("sequence must start at the identity")]
    WrongStart,
    #[error("sequence must end at the reverse permutation")]
    WrongEnd,
    #[error("step {step}: not a single adjacent transposition")]
    NotAdjacentSwap { step: u16 },
    #[error("step {step}: swap at position {position} reverses a descent")]
    DescentSwap { step: u16, position: u8 },
    #[error("step {step}: recorded event disagrees with the permutations")]
    EventMismatch { step: u16 },
    #[error("pair ({a},{b}) swapped more than once")]
    PairRepeated { a: u8, b: u8 },
    #[error("step {step}: word size changes mid-sequence")]
    MixedSizes { step: u16 },
    #[error("sequence is empty")]
    Empty,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A chain of `C(n,2) + 1` permutations from the identity to the reverse
/// word, together with the switch events recorded along the way.
///
/// Events are recorded eagerly at construction so replays are deterministic;
/// [`validate_sequence`] re-derives every step and cross-checks them.
#[derive(Clone, PartialEq, Eq)]
pub struct CircularSequence {
    n: u8,
    perms: Vec<Permutation>,
    events: Vec<SwitchEvent>,
}

impl CircularSequence {
    /// Builds and fully validates a sequence from the list of 1-based swap
    /// positions, starting at the identity.
    pub fn from_switch_positions(n: u8, positions: &[u8]) -> Result<Self, SequenceViolation> {
        let mut perms = Vec::with_capacity(positions.len() + 1);
        let mut events = Vec::with_capacity(positions.len());
        let mut current = Permutation::identity(n)?;
        perms.push(current.clone());
        for (i, &position) in positions.iter().enumerate() {
            let step = i as u16 + 1;
            let next = current
                .apply_ascent_swap(position)
                .map_err(|err| match err {
                    PermError::NotAnAscent { position, .. } => {
                        SequenceViolation::DescentSwap { step, position }
                    }
                    other => SequenceViolation::Perm(other),
                })?;
            events.push(SwitchEvent {
                step,
                position,
                values: (current.value_at(position), current.value_at(position + 1)),
            });
            perms.push(next.clone());
            current = next;
        }
        let seq = CircularSequence { n, perms, events };
        validate_sequence(&seq)?;
        Ok(seq)
    }

    /// Builds a sequence from explicit permutations, deriving the events by
    /// diffing consecutive words, and validates the result.
    pub fn from_permutations(perms: Vec<Permutation>) -> Result<Self, SequenceViolation> {
        let first = perms.first().ok_or(SequenceViolation::Empty)?;
        let n = first.n();
        let mut events = Vec::with_capacity(perms.len().saturating_sub(1));
        for (i, pair) in perms.windows(2).enumerate() {
            let step = i as u16 + 1;
            if pair[1].n() != n {
                return Err(SequenceViolation::MixedSizes { step });
            }
            let position = derive_step(&pair[0], &pair[1], step)?;
            events.push(SwitchEvent {
                step,
                position,
                values: (pair[0].value_at(position), pair[0].value_at(position + 1)),
            });
        }
        let seq = CircularSequence { n, perms, events };
        validate_sequence(&seq)?;
        Ok(seq)
    }

    /// Wraps raw parts without validation, for feeding [`validate_sequence`]
    /// with externally produced data.
    pub fn from_parts_unchecked(n: u8, perms: Vec<Permutation>, events: Vec<SwitchEvent>) -> Self {
        CircularSequence { n, perms, events }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn events(&self) -> &[SwitchEvent] {
        &self.events
    }

    pub fn len_steps(&self) -> usize {
        self.events.len()
    }

    /// Per-position switch tallies `s_1 .. s_{n-1}` (index 0 is position 1).
    pub fn switch_counts(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.n as usize - 1];
        for event in &self.events {
            counts[event.position as usize - 1] += 1;
        }
        counts
    }
}

impl fmt::Debug for CircularSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CircularSequence(n={}, steps={})",
            self.n,
            self.events.len()
        )
    }
}

fn derive_step(prev: &Permutation, next: &Permutation, step: u16) -> Result<u8, SequenceViolation> {
    let diffs: Vec<usize> = (0..prev.word().len())
        .filter(|&i| prev.word()[i] != next.word()[i])
        .collect();
    if diffs.len() != 2 || diffs[1] != diffs[0] + 1 {
        return Err(SequenceViolation::NotAdjacentSwap { step });
    }
    let position = diffs[0] as u8 + 1;
    let (a, b) = (prev.value_at(position), prev.value_at(position + 1));
    if next.value_at(position) != b || next.value_at(position + 1) != a {
        return Err(SequenceViolation::NotAdjacentSwap { step });
    }
    if a > b {
        return Err(SequenceViolation::DescentSwap { step, position });
    }
    Ok(position)
}

/// Checks every circular-sequence invariant, reporting the first violation:
/// endpoints, length, one ascent swap per step, events matching the
/// permutations, and each unordered pair swapped exactly once.
pub fn validate_sequence(seq: &CircularSequence) -> Result<(), SequenceViolation> {
    let n = seq.n;
    check_size(n)?;
    let expected = step_count(n) as usize + 1;
    if seq.perms.len() != expected {
        return Err(SequenceViolation::WrongLength {
            n,
            expected,
            found: seq.perms.len(),
        });
    }
    if seq.events.len() != expected - 1 {
        return Err(SequenceViolation::WrongEventCount {
            n,
            expected: expected - 1,
            found: seq.events.len(),
        });
    }
    if !seq.perms[0].is_identity() || seq.perms[0].n() != n {
        return Err(SequenceViolation::WrongStart);
    }
    if !seq.perms[expected - 1].is_reversed() {
        return Err(SequenceViolation::WrongEnd);
    }
    let mut swapped = vec![false; (n as usize + 1) * (n as usize + 1)];
    for (i, pair) in seq.perms.windows(2).enumerate() {
        let step = i as u16 + 1;
        if pair[0].n() != n || pair[1].n() != n {
            return Err(SequenceViolation::MixedSizes { step });
        }
        let position = derive_step(&pair[0], &pair[1], step)?;
        let (a, b) = (pair[0].value_at(position), pair[0].value_at(position + 1));
        let event = seq.events[i];
        if event.step != step || event.position != position || event.values != (a, b) {
            return Err(SequenceViolation::EventMismatch { step });
        }
        let key = a as usize * (n as usize + 1) + b as usize;
        if swapped[key] {
            return Err(SequenceViolation::PairRepeated { a, b });
        }
        swapped[key] = true;
    }
    Ok(())
}

/// Validated switch tallies for a sequence (propagates the first violation).
pub fn switch_counts(seq: &CircularSequence) -> Result<Vec<u32>, SequenceViolation> {
    validate_sequence(seq)?;
    Ok(seq.switch_counts())
}

/// Incremental builder used by the constructive algorithms. Every pushed
/// swap must be an ascent; `finish` asserts the walk reached the reverse
/// word in exactly `C(n,2)` steps.
pub(crate) struct SequenceBuilder {
    n: u8,
    word: Vec<u8>,
    place: Vec<u8>,
    perms: Vec<Permutation>,
    events: Vec<SwitchEvent>,
}

impl SequenceBuilder {
    pub fn new(n: u8) -> Self {
        let identity = Permutation::identity(n).expect("builder size checked by caller");
        SequenceBuilder {
            n,
            word: identity.word().to_vec(),
            place: (1..=n).collect(),
            perms: vec![identity],
            events: Vec::with_capacity(step_count(n) as usize),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn position_of(&self, value: u8) -> u8 {
        self.place[value as usize - 1]
    }

    pub fn value_at(&self, position: u8) -> u8 {
        self.word[position as usize - 1]
    }

    pub fn steps(&self) -> usize {
        self.events.len()
    }

    pub fn is_reversed(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| v == self.n - i as u8)
    }

    pub fn swap_ascent(&mut self, position: u8) {
        let i = position as usize - 1;
        let (a, b) = (self.word[i], self.word[i + 1]);
        assert!(a < b, "builder swap at {position} is not an ascent");
        self.word.swap(i, i + 1);
        self.place[a as usize - 1] = position + 1;
        self.place[b as usize - 1] = position;
        self.events.push(SwitchEvent {
            step: self.events.len() as u16 + 1,
            position,
            values: (a, b),
        });
        self.perms.push(Permutation {
            word: self.word.clone(),
        });
    }

    pub fn finish(self) -> CircularSequence {
        assert_eq!(
            self.events.len(),
            step_count(self.n) as usize,
            "builder finished early"
        );
        assert!(self.is_reversed(), "builder did not reach the reverse word");
        CircularSequence {
            n: self.n,
            perms: self.perms,
            events: self.events,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::proptest;

    #[test]
    fn identity_words() {
        assert_eq!(Permutation::identity(4).unwrap().word(), &[1, 2, 3, 4]);
        assert_eq!(Permutation::identity(2).unwrap().word(), &[1, 2]);
        assert_eq!(
            Permutation::identity(8).unwrap().word(),
            &[1, 2, 3, 4, 5, 6, 7, 8]
        );
        assert_eq!(Permutation::identity(1), Err(PermError::InvalidSize(1)));
        assert_eq!(Permutation::identity(0), Err(PermError::InvalidSize(0)));
    }

    #[test]
    fn ascent_swaps() {
        let e = Permutation::identity(4).unwrap();
        let p = e.apply_ascent_swap(1).unwrap();
        assert_eq!(p.word(), &[2, 1, 3, 4]);
        let q = p.apply_ascent_swap(2).unwrap();
        assert_eq!(q.word(), &[2, 3, 1, 4]);
        assert_eq!(q.inversions(), 2);

        // A second swap at the same position reverses the one just made.
        let once = e.apply_ascent_swap(2).unwrap();
        assert!(matches!(
            once.apply_ascent_swap(2),
            Err(PermError::NotAnAscent { position: 2, .. })
        ));
        assert!(matches!(
            e.apply_ascent_swap(4),
            Err(PermError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn word_validation() {
        assert!(Permutation::from_word(vec![2, 1, 3]).is_ok());
        assert_eq!(
            Permutation::from_word(vec![1, 1, 3]),
            Err(PermError::NotBijection(3))
        );
        assert_eq!(
            Permutation::from_word(vec![1, 2, 4]),
            Err(PermError::NotBijection(3))
        );
    }

    #[test]
    fn n2_unique_sequence_is_valid() {
        let seq = CircularSequence::from_switch_positions(2, &[1]).unwrap();
        assert_eq!(seq.switch_counts(), vec![1]);
        assert_eq!(seq.permutations().len(), 2);
    }

    #[test]
    fn n3_sequences_from_permutations() {
        let words = [vec![1, 2, 3], vec![2, 1, 3], vec![2, 3, 1], vec![3, 2, 1]];
        let perms: Vec<Permutation> = words
            .iter()
            .map(|w| Permutation::from_word(w.clone()).unwrap())
            .collect();
        let seq = CircularSequence::from_permutations(perms).unwrap();
        assert_eq!(seq.switch_counts(), vec![2, 1]);
    }

    #[test]
    fn reversing_a_swap_is_rejected() {
        let words = [vec![1, 2, 3], vec![2, 1, 3], vec![1, 2, 3], vec![3, 2, 1]];
        let perms: Vec<Permutation> = words
            .iter()
            .map(|w| Permutation::from_word(w.clone()).unwrap())
            .collect();
        let err = CircularSequence::from_permutations(perms).unwrap_err();
        assert_eq!(
            err,
            SequenceViolation::DescentSwap {
                step: 2,
                position: 1
            }
        );
    }

    #[test]
    fn wrong_endpoint_is_reported() {
        let perms = vec![
            Permutation::from_word(vec![2, 1, 3]).unwrap(),
            Permutation::from_word(vec![2, 3, 1]).unwrap(),
        ];
        let seq = CircularSequence {
            n: 3,
            perms,
            events: vec![SwitchEvent {
                step: 1,
                position: 2,
                values: (1, 3),
            }],
        };
        assert!(matches!(
            validate_sequence(&seq),
            Err(SequenceViolation::WrongLength { .. })
        ));
    }

    #[test]
    fn total_switches_is_pair_count_for_n4() {
        let seq = CircularSequence::from_switch_positions(4, &[1, 2, 3, 1, 2, 1]).unwrap();
        let counts = switch_counts(&seq).unwrap();
        assert_eq!(counts.iter().sum::<u32>(), 6);
        assert_eq!(counts, seq.switch_counts());
    }

    proptest! {
        #[test]
        fn random_chain_is_graded_and_totals_pair_count(seed in 0u64..512, n in 2u8..7) {
            let seq = crate::oracle::random_sequence(n, seed);
            validate_sequence(&seq).unwrap();
            for (i, p) in seq.permutations().iter().enumerate() {
                assert_eq!(p.inversions(), i as u32);
            }
            let total: u32 = seq.switch_counts().iter().sum();
            assert_eq!(total, step_count(n));
        }
    }
}

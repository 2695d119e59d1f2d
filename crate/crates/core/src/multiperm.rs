//! The polytope of multiset permutations: compositions, vertex words,
//! skeleton adjacency, breadth-first distances, diameters, closed forms,
//! and the inequality description.
//!
//! A composition `<k_1,..,k_m>` of `n` fixes the multiset with `k_t` copies
//! of `t`; vertices of the polytope are the distinct words over that
//! multiset, and two vertices are adjacent exactly when they differ by
//! swapping one coordinate holding `t` with one holding `t+1`. The vertex
//! farthest from any word is its reversal, so the diameter is the BFS
//! distance from the sorted word to its reverse.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::budget::{Budget, ResourceError};
use crate::circseq::{composition_gates_unchecked, switch_bounds, GateSet};
use crate::perm_core::{Permutation, MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultipermError {
    #[error("composition needs at least two parts")]
    TooFewParts,
    #[error("composition parts must be positive")]
    ZeroPart,
    #[error("composition total {0} out of range (need 2..={MAX_N})")]
    TotalOutOfRange(u16),
    #[error("could not parse composition part {0:?}")]
    Parse(String),
    #[error("permutation size {perm} does not match composition total {total}")]
    SizeMismatch { perm: u8, total: u8 },
    #[error("vertex words belong to different multisets")]
    CompositionMismatch,
    #[error("values must be strictly increasing and match the part count")]
    BadValues,
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

/// An ordered list of positive parts `<k_1,..,k_m>` with `m >= 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u8>,
}

impl Composition {
    pub fn new(parts: Vec<u8>) -> Result<Self, MultipermError> {
        if parts.len() < 2 {
            return Err(MultipermError::TooFewParts);
        }
        if parts.contains(&0) {
            return Err(MultipermError::ZeroPart);
        }
        let total: u16 = parts.iter().map(|&k| u16::from(k)).sum();
        if total < 2 || total > u16::from(MAX_N) {
            return Err(MultipermError::TotalOutOfRange(total));
        }
        Ok(Composition { parts })
    }

    /// Parses comma-separated parts, e.g. `"1,3,2,1,1"`.
    pub fn parse(text: &str) -> Result<Self, MultipermError> {
        let mut parts = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            parts.push(
                token
                    .parse::<u8>()
                    .map_err(|_| MultipermError::Parse(token.to_string()))?,
            );
        }
        Composition::new(parts)
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    /// Number of distinct values (parts).
    pub fn block_count(&self) -> u8 {
        self.parts.len() as u8
    }

    /// Total length `n` of the words.
    pub fn total(&self) -> u8 {
        self.parts.iter().sum()
    }

    /// Gate positions: the proper partial sums of the parts.
    pub fn gates(&self) -> GateSet {
        let mut positions = Vec::with_capacity(self.parts.len() - 1);
        let mut acc = 0u8;
        for &k in &self.parts[..self.parts.len() - 1] {
            acc += k;
            positions.push(acc);
        }
        composition_gates_unchecked(self.total(), positions)
    }

    /// The block index (value) of the `i`-th letter of the sorted word.
    pub fn block_of(&self, i: u8) -> u8 {
        let mut acc = 0u8;
        for (t, &k) in self.parts.iter().enumerate() {
            acc += k;
            if i <= acc {
                return t as u8 + 1;
            }
        }
        unreachable!("index within total")
    }

    /// Number of distinct vertex words, `n! / prod(k_t!)`.
    pub fn vertex_count(&self) -> u128 {
        let mut count: u128 = 1;
        let mut placed: u8 = 0;
        // Build up as a product of binomials to stay in range.
        for &k in &self.parts {
            for i in 1..=k {
                placed += 1;
                count = count * u128::from(placed) / u128::from(i);
            }
        }
        count
    }

    /// The sorted word, image of the identity permutation.
    pub fn identity_vertex(&self) -> VertexWord {
        let mut coords = Vec::with_capacity(self.total() as usize);
        for (t, &k) in self.parts.iter().enumerate() {
            coords.extend(std::iter::repeat_n(t as u8 + 1, k as usize));
        }
        VertexWord { coords }
    }

    /// The reversed sorted word, image of the reverse permutation.
    pub fn reversed_vertex(&self) -> VertexWord {
        let mut v = self.identity_vertex();
        v.coords.reverse();
        v
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Composition{:?}", self.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
            first = false;
        }
        Ok(())
    }
}

/// Recovers the composition whose partial sums are the given gates.
pub fn composition_from_gates(gs: &GateSet) -> Composition {
    let mut parts = Vec::with_capacity(gs.len() + 1);
    let mut prev = 0u8;
    for &y in gs.positions() {
        parts.push(y - prev);
        prev = y;
    }
    parts.push(gs.n() - prev);
    Composition { parts }
}

/// A word over `1..=m` with the multiset of a composition; a vertex label
/// for the polytope skeleton.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexWord {
    coords: Vec<u8>,
}

impl VertexWord {
    pub fn new(coords: Vec<u8>) -> Self {
        VertexWord { coords }
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    /// Packs the word into a nibble-per-coordinate key; words are at most
    /// [`MAX_N`] long and values at most 15 + 1.
    pub fn key(&self) -> u64 {
        let mut key = 0u64;
        for (i, &c) in self.coords.iter().enumerate() {
            key |= u64::from(c - 1) << (4 * i);
        }
        key
    }

    /// Multiplicity of each value `1..=max`.
    pub fn multiplicities(&self) -> Vec<u8> {
        let max = self.coords.iter().copied().max().unwrap_or(0);
        let mut mult = vec![0u8; max as usize];
        for &c in &self.coords {
            mult[c as usize - 1] += 1;
        }
        mult
    }

    /// All words reachable by swapping one coordinate holding `t` with one
    /// holding `t+1`, in sorted order. The count is the vertex degree,
    /// `sum_t k_t * k_{t+1}`.
    pub fn neighbors(&self) -> Vec<VertexWord> {
        let mut out = Vec::new();
        for i in 0..self.coords.len() {
            for j in 0..self.coords.len() {
                if self.coords[j] == self.coords[i] + 1 {
                    let mut coords = self.coords.clone();
                    coords.swap(i, j);
                    out.push(VertexWord { coords });
                }
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Debug for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexWord{:?}", self.coords)
    }
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for c in &self.coords {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        write!(f, ")")
    }
}

/// The vertex labeled by a permutation: position `sigma(i)` carries the
/// block index of `i`.
pub fn vertex_from_permutation(
    sigma: &Permutation,
    c: &Composition,
) -> Result<VertexWord, MultipermError> {
    let total = c.total();
    if sigma.n() != total {
        return Err(MultipermError::SizeMismatch {
            perm: sigma.n(),
            total,
        });
    }
    let mut coords = vec![0u8; total as usize];
    for i in 1..=total {
        coords[sigma.value_at(i) as usize - 1] = c.block_of(i);
    }
    Ok(VertexWord { coords })
}

/// Skeleton distance between two words of the same multiset.
pub fn distance(u: &VertexWord, v: &VertexWord) -> Result<u32, MultipermError> {
    if u.coords.len() != v.coords.len() || u.multiplicities() != v.multiplicities() {
        return Err(MultipermError::CompositionMismatch);
    }
    Ok(bfs_distance(u, v))
}

fn bfs_distance(start: &VertexWord, target: &VertexWord) -> u32 {
    if start == target {
        return 0;
    }
    let target_key = target.key();
    let mut visited = HashSet::new();
    visited.insert(start.key());
    let mut frontier = vec![start.clone()];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for word in frontier {
            for neighbor in word.neighbors() {
                let key = neighbor.key();
                if key == target_key {
                    return depth;
                }
                if visited.insert(key) {
                    next.push(neighbor);
                }
            }
        }
        frontier = next;
    }
    unreachable!("skeleton is connected");
}

/// All distances from `start`, by full BFS.
pub fn distances_from(start: &VertexWord) -> Vec<(VertexWord, u32)> {
    let mut dist: HashMap<u64, u32> = HashMap::new();
    dist.insert(start.key(), 0);
    let mut out = vec![(start.clone(), 0)];
    let mut queue = VecDeque::new();
    queue.push_back(start.clone());
    while let Some(word) = queue.pop_front() {
        let d = dist[&word.key()];
        for neighbor in word.neighbors() {
            if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(neighbor.key()) {
                slot.insert(d + 1);
                out.push((neighbor.clone(), d + 1));
                queue.push_back(neighbor);
            }
        }
    }
    out
}

/// Skeleton diameter: the distance from the sorted word to its reverse,
/// which the farthest-vertex property makes the maximum over all pairs.
pub fn diameter(c: &Composition, budget: &Budget) -> Result<u32, MultipermError> {
    budget.check_vertices(c.vertex_count())?;
    Ok(bfs_distance(&c.identity_vertex(), &c.reversed_vertex()))
}

/// Bounds on the diameter from the derived gate set.
pub fn diameter_bounds(c: &Composition) -> (u32, u32) {
    switch_bounds(&c.gates())
}

/// Exact diameter for two or three parts; `None` for more.
pub fn closed_form_diameter(c: &Composition) -> Option<u32> {
    match *c.parts() {
        [k1, k2] => Some(u32::from(k1.min(k2))),
        [k1, k2, k3] => {
            let n = u32::from(k1) + u32::from(k2) + u32::from(k3);
            let y1 = u32::from(k1);
            let y2 = u32::from(k1) + u32::from(k2);
            let x1 = y1.min(n - y1);
            let x2 = y2.min(n - y2);
            if k1 == k3 {
                Some(2 * u32::from(k1) + 1)
            } else {
                Some(x1 + x2)
            }
        }
        _ => None,
    }
}

/// One inequality row `x(S) >= rhs` of the inequality description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetRow {
    /// Sorted 1-based coordinate indices of `S`.
    pub subset: Vec<u8>,
    pub rhs: i64,
}

/// The inequality description: one equality over all coordinates plus
/// `2^n - 2` subset rows, each stating that a subset of coordinates sums to
/// at least the corresponding prefix of the sorted multiset values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRepresentation {
    /// The value written for block `t` (defaults to `t`).
    pub values: Vec<i64>,
    /// Right-hand side of the equality over all coordinates.
    pub equality_rhs: i64,
    pub rows: Vec<SubsetRow>,
}

impl HRepresentation {
    /// Whether a vertex word satisfies every row and the equality.
    pub fn is_satisfied_by(&self, v: &VertexWord) -> bool {
        let coord = |i: u8| self.values[v.coords()[i as usize - 1] as usize - 1];
        let n = v.coords().len() as u8;
        let total: i64 = (1..=n).map(coord).sum();
        if total != self.equality_rhs {
            return false;
        }
        self.rows
            .iter()
            .all(|row| row.subset.iter().map(|&i| coord(i)).sum::<i64>() >= row.rhs)
    }

    /// Rows as text, `x(1,3) >= 3` style, equality first.
    pub fn rows_text(&self, n: u8) -> Vec<String> {
        let all: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut out = vec![format!("x({}) = {}", all.join(","), self.equality_rhs)];
        for row in &self.rows {
            let idx: Vec<String> = row.subset.iter().map(|i| i.to_string()).collect();
            out.push(format!("x({}) >= {}", idx.join(","), row.rhs));
        }
        out
    }
}

/// Emits the full inequality description for a composition, optionally with
/// explicit strictly increasing block values.
pub fn h_representation(
    c: &Composition,
    values: Option<&[i64]>,
    budget: &Budget,
) -> Result<HRepresentation, MultipermError> {
    let n = c.total();
    budget.check_word_size("inequality description word size", n, budget.hrep_max_n)?;
    let m = c.block_count() as usize;
    let values: Vec<i64> = match values {
        Some(vs) => {
            if vs.len() != m || vs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(MultipermError::BadValues);
            }
            vs.to_vec()
        }
        None => (1..=m as i64).collect(),
    };

    // Sorted multiset values a_1 <= .. <= a_n and their prefix sums.
    let sorted: Vec<i64> = (1..=n)
        .map(|i| values[c.block_of(i) as usize - 1])
        .collect();
    let mut prefix = vec![0i64; n as usize + 1];
    for i in 0..n as usize {
        prefix[i + 1] = prefix[i] + sorted[i];
    }

    let mut rows = Vec::with_capacity((1usize << n) - 2);
    for size in 1..n {
        let mut subset: Vec<u8> = (1..=size).collect();
        loop {
            rows.push(SubsetRow {
                subset: subset.clone(),
                rhs: prefix[size as usize],
            });
            if !next_subset(&mut subset, n) {
                break;
            }
        }
    }
    Ok(HRepresentation {
        values,
        equality_rhs: prefix[n as usize],
        rows,
    })
}

/// Advances a sorted subset of `1..=n` to its lexicographic successor of the
/// same size; false when exhausted.
fn next_subset(subset: &mut [u8], n: u8) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - (k - 1 - i) as u8 {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every distinct word over the multiset, in lexicographic order.
pub fn enumerate_vertices(c: &Composition) -> Vec<VertexWord> {
    let mut word = c.identity_vertex().coords().to_vec();
    let mut out = Vec::new();
    loop {
        out.push(VertexWord {
            coords: word.clone(),
        });
        if !next_multiset_permutation(&mut word) {
            break;
        }
    }
    out
}

fn next_multiset_permutation(word: &mut [u8]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

//! Circular sequences of permutations, gate-switch accounting, skeleton
//! diameters of multiset-permutation polytopes, and planar k-set counts.
//!
//! The crate is organized around five subsystems:
//!
//! * [`perm_core`] — permutation words, ascent swaps, and validated circular
//!   sequences with per-position switch tallies;
//! * [`circseq`] — gate profiles, good/bad switch classification, bounds on
//!   the minimum gate-switch count, and the two-phase constructive sequence;
//! * [`multiperm`] — compositions, vertex words, skeleton adjacency and BFS
//!   diameters, closed forms, and the inequality description;
//! * [`ksets`] — exact-rational point configurations, the rotating-line
//!   sweep, k-set counts, and the diameter sandwich check;
//! * [`oracle`] — independent brute-force ground truth for everything above.
//!
//! [`verify`] packages the cross-validation suites that the CLI and the
//! acceptance tests share.

pub mod budget;
pub mod circseq;
pub mod ksets;
pub mod multiperm;
pub mod oracle;
pub mod perm_core;
pub mod verify;

mod util;

pub use budget::{Budget, ResourceError};
pub use circseq::{GateProfile, GateSet, GateSwitchTally, SwitchClass, TwoPhaseSequence};
pub use ksets::{KSetCounts, LRSpec, PointConfig, SandwichReport};
pub use multiperm::{Composition, HRepresentation, VertexWord};
pub use perm_core::{CircularSequence, Permutation, SwitchEvent};

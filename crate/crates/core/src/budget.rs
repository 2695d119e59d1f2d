//! Resource budgets for the engines whose state spaces grow factorially.
//!
//! Every expensive operation checks its budget up front and returns a clean
//! [`ResourceError`] instead of attempting an allocation it cannot afford.

use thiserror::Error;

/// Exceeding a budget is an ordinary, reportable condition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} needs {required}, budget is {limit}")]
pub struct ResourceError {
    pub what: &'static str,
    pub required: u128,
    pub limit: u128,
}

/// Limits for the search engines. `max_vertices` guards breadth-first
/// searches over skeleton graphs; the `*_max_n` fields cap the word size of
/// the factorial-state oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest skeleton vertex count a BFS may visit.
    pub max_vertices: u64,
    /// Largest word size for the shortest-path oracle (state space n!).
    pub oracle_max_n: u8,
    /// Largest word size for exhaustive sequence enumeration.
    pub enumerate_max_n: u8,
    /// Largest word size for the all-pairs diameter oracle.
    pub all_pairs_max_n: u8,
    /// Largest word size for emitting the full inequality description
    /// (2^n - 2 rows).
    pub hrep_max_n: u8,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 5_000_000,
            oracle_max_n: 9,
            enumerate_max_n: 5,
            all_pairs_max_n: 7,
            hrep_max_n: 12,
        }
    }
}

impl Budget {
    /// Defaults with the `GATESWITCH_BUDGET` environment variable applied as
    /// a vertex-count override.
    pub fn from_env() -> Self {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var("GATESWITCH_BUDGET") {
            if let Ok(v) = raw.trim().parse::<u64>() {
                budget.max_vertices = v;
            }
        }
        budget
    }

    pub(crate) fn check_vertices(&self, required: u128) -> Result<(), ResourceError> {
        if required > u128::from(self.max_vertices) {
            return Err(ResourceError {
                what: "skeleton vertex count",
                required,
                limit: u128::from(self.max_vertices),
            });
        }
        Ok(())
    }

    pub(crate) fn check_word_size(
        &self,
        what: &'static str,
        n: u8,
        limit: u8,
    ) -> Result<(), ResourceError> {
        if n > limit {
            return Err(ResourceError {
                what,
                required: u128::from(n),
                limit: u128::from(limit),
            });
        }
        Ok(())
    }
}

use serde::{Deserialize, Serialize};

/// Enumeration limits. Every exhaustive search checks its counter against one
/// of these and fails with `Error::BudgetExceeded` instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Column subsets enumerated by `delta` and the oracles.
    pub subsets: u64,
    /// Coset representatives / candidate targets swept by the oracles.
    pub targets: u64,
    /// Search-tree nodes (closest-vector, witness and representation searches).
    pub nodes: u64,
}

impl Budget {
    pub const fn uniform(limit: u64) -> Self {
        Budget {
            subsets: limit,
            targets: limit,
            nodes: limit,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            subsets: 1_000_000,
            targets: 1_000_000,
            nodes: 50_000_000,
        }
    }
}

pub(crate) fn check(what: &'static str, count: u128, limit: u64) -> crate::Result<()> {
    if count > limit as u128 {
        Err(crate::Error::BudgetExceeded {
            what,
            count,
            limit: limit as u128,
        })
    } else {
        Ok(())
    }
}

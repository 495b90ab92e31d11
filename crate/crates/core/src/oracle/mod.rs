//! Exhaustive reference computations for small instances: exact ℓ∞ closest
//! vectors, worst-case sweeps over targets, antichains of the grid poset and
//! representation counting.

mod antichain;
mod cvp;
mod lattice;
mod semigroup;
mod unique;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{serde_int_vec, serde_rational};
use crate::exact_linalg::IntVector;

pub use antichain::max_antichain;
pub use cvp::cvp_linf;
pub use lattice::{lattice_app, lattice_objective, periodicity_modulus};
pub use semigroup::{semigroup_app, semigroup_app_at};
pub use unique::{representations, verify_unique_representation};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub supports: u64,
    pub targets: u64,
    pub nodes: u64,
}

/// Result of a worst-case sweep: the value, a target attaining it and the
/// best sparse approximation of that target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    #[serde(with = "serde_rational")]
    pub value: BigRational,
    #[serde(with = "serde_int_vec")]
    pub witness_b: IntVector,
    pub witness_support: Vec<usize>,
    #[serde(with = "serde_int_vec")]
    pub witness_x: IntVector,
    pub stats: EnumerationStats,
}

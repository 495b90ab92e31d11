//! Sparse approximation over the semigroup `AZ^n_{≥0}`.
//!
//! Three regimes are covered: columns that positively span `R^m` (reduced to
//! the lattice case), simplicial instances measured in the `P(B)` norm of a
//! fixed basis, and the scalar `k = 2` case.

mod bounds;
mod instance;
mod knapsack;
mod reduce;
mod spanning;

pub use bounds::{
    exact_threshold, k2_constant, recursive_bound, support_step_bound, sylvester_phi, sylvester_t,
};
pub use instance::SemigroupInstance;
pub use knapsack::approximate_k2;
pub use reduce::{
    approximate_semigroup, find_witness, reduce_support_once, reduce_to_s, semigroup_trace,
    MergeStep, Reduced, SemigroupTrace,
};
pub use spanning::{approximate_spanning, caratheodory_completion, positively_spans};

//! Exact integer and rational linear algebra. No operation in this module
//! rounds: all entries are arbitrary-precision integers or rationals.

mod det;
mod hnf;
mod matrix;

pub use det::{adjugate, determinant, has_full_row_rank, pnorm, rank, solve_rational};
pub use hnf::{hnf, in_lattice, lattice_determinant, lattice_intersection, HnfResult};
pub use matrix::{int_to_rat, linf, linf_int, IntMatrix, IntVector, RatVector};

//! Sparse integer and non-negative integer approximation of `b = Ax`.
//!
//! Given `A ∈ Z^{m×n}` and a target `b` in the lattice `AZ^n` (or the
//! semigroup `AZ^n_{≥0}`), the routines here look for `x` with at most `k`
//! non-zero entries and small `‖Ax − b‖`, and report a certified upper bound
//! on the worst case. Brute-force oracles in [`oracle`] compute the true
//! worst-case error on small instances so the bounds can be checked.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).

pub mod arith;
pub mod combin;
mod config;
mod error;
pub mod exact_linalg;
pub mod instances;
pub mod lattice_approx;
pub mod oracle;
pub mod semigroup_approx;

pub use config::Budget;
pub use error::{Error, Result};

//! Sparse approximation over the lattice `AZ^n` in the ℓ∞ norm.
//!
//! The construction: start from an `m×m` submatrix `B` of smallest
//! `|det B| = δ(A)`, then greedily add columns that are not yet in the
//! current lattice. Each strict step at least halves the lattice determinant,
//! and HNF rounding on the selected columns has ℓ∞ error at most half the
//! determinant. Together that gives error `≤ δ(A)/2^{k−m+1}` with `k` columns.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{round_half_up, RootSum};
use crate::combin::{binomial, Combinations};
use crate::config::{check, Budget};
use crate::exact_linalg::{
    determinant, has_full_row_rank, hnf, int_to_rat, lattice_determinant, linf, linf_int, pnorm,
    IntMatrix, IntVector, RatVector,
};
use crate::{Error, Result};

/// Which norm measures `Ax − b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "norm", rename_all = "lowercase")]
pub enum NormTag {
    Linf,
    /// `‖B^{-1}·‖_∞` for the submatrix `B` on these column indices.
    Pnorm { basis: Vec<usize> },
}

impl NormTag {
    pub fn measure(&self, a: &IntMatrix, residual: &[BigInt]) -> Result<BigRational> {
        match self {
            NormTag::Linf => Ok(BigRational::from_integer(linf_int(residual))),
            NormTag::Pnorm { basis } => pnorm(&a.select_columns(basis)?, &int_to_rat(residual)),
        }
    }
}

/// Sparse coefficient vector together with its exact error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparseSolution {
    #[serde(serialize_with = "ser_ints")]
    pub x: IntVector,
    pub support: Vec<usize>,
    #[serde(serialize_with = "ser_rat")]
    pub error: BigRational,
    pub norm_tag: NormTag,
    /// Guaranteed upper bound on `error` for this construction, when known.
    #[serde(serialize_with = "ser_bound")]
    pub bound: Option<RootSum>,
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_rat<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_bound<S: Serializer>(v: &Option<RootSum>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

pub fn residual(a: &IntMatrix, x: &[BigInt], b: &[BigInt]) -> Result<IntVector> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    Ok(a.mul_vec(x)?.into_iter().zip(b).map(|(l, r)| l - r).collect())
}

impl SparseSolution {
    /// Builds a solution, computing support and error from scratch.
    pub fn new(
        a: &IntMatrix,
        b: &[BigInt],
        x: IntVector,
        norm_tag: NormTag,
        bound: Option<RootSum>,
    ) -> Result<Self> {
        let error = norm_tag.measure(a, &residual(a, &x, b)?)?;
        let support = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
        Ok(SparseSolution {
            x,
            support,
            error,
            norm_tag,
            bound,
        })
    }

    /// Recomputes the error and support and checks they match the stored ones.
    pub fn verify(&self, a: &IntMatrix, b: &[BigInt]) -> Result<bool> {
        let again = SparseSolution::new(a, b, self.x.clone(), self.norm_tag.clone(), None)?;
        Ok(again.error == self.error && again.support == self.support)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.x.iter().all(|v| !v.is_negative())
    }
}

/// `δ(A)`: the smallest `|det B|` over invertible `m×m` column submatrices,
/// with the lexicographically first minimizing index set.
pub fn delta(a: &IntMatrix, budget: &Budget) -> Result<(BigInt, Vec<usize>)> {
    let (m, n) = (a.rows(), a.cols());
    if n < m {
        return Err(Error::RankDeficient);
    }
    check("subset", binomial(n, m), budget.subsets)?;
    let mut best: Option<(BigInt, Vec<usize>)> = None;
    for cols in Combinations::new(n, m) {
        let d = determinant(&a.select_columns(&cols)?)?.abs();
        if d.is_zero() {
            continue;
        }
        if best.as_ref().map_or(true, |(b, _)| d < *b) {
            best = Some((d, cols));
        }
    }
    best.ok_or(Error::RankDeficient)
}

/// Output of [`hnf_round`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rounding {
    /// Coefficients on the columns of `D`.
    pub x: IntVector,
    /// `D·x − d`.
    pub residual: RatVector,
    /// `‖D·x − d‖_∞`.
    pub error: BigRational,
    /// `H_{i,i}`: coordinate `i` of the residual is at most half of it.
    pub diagonal: IntVector,
    pub det_lambda: BigInt,
}

/// Rounds `d` to a nearby point of `D·Z^l` coordinate by coordinate along
/// the triangular HNF basis.
pub fn hnf_round(d: &IntMatrix, target: &[BigRational]) -> Result<Rounding> {
    let m = d.rows();
    if target.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: target.len(),
        });
    }
    let res = hnf(d)?;
    let mut z: IntVector = Vec::with_capacity(m);
    for i in 0..m {
        let mut rest = target[i].clone();
        for (j, zj) in z.iter().enumerate() {
            rest -= BigRational::from_integer(&res.h[(i, j)] * zj);
        }
        z.push(round_half_up(&(rest / BigRational::from_integer(res.h[(i, i)].clone()))));
    }
    let x = res.lift(&z);
    let hz = res.h.mul_vec(&z)?;
    let residual: RatVector = hz
        .into_iter()
        .zip(target)
        .map(|(v, t)| BigRational::from_integer(v) - t)
        .collect();
    Ok(Rounding {
        x,
        error: linf(&residual),
        residual,
        diagonal: res.diagonal(),
        det_lambda: res.det_lambda,
    })
}

/// Greedy column chain: the `δ(A)` basis followed by columns each shrinking
/// the generated lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBasisChain {
    pub column_indices: Vec<usize>,
    /// `det Λ_i` after the basis (`i = 0`) and after each added column.
    pub dets: Vec<BigInt>,
    /// Every target in `AZ^n` is within this ℓ∞ distance of `Λ_last`.
    pub certified_bound: BigRational,
    /// True when the chain stopped because every column already lay in the lattice.
    pub saturated: bool,
}

fn check_k(k: usize, min: usize, max: usize) -> Result<()> {
    if k < min || k > max {
        Err(Error::BadK { k, min, max })
    } else {
        Ok(())
    }
}

pub fn select_sparse_basis(a: &IntMatrix, k: usize, budget: &Budget) -> Result<SparseBasisChain> {
    let (m, n) = (a.rows(), a.cols());
    if !has_full_row_rank(a) {
        return Err(Error::RankDeficient);
    }
    check_k(k, m, n)?;
    let (delta, mut cols) = delta(a, budget)?;
    let full = lattice_determinant(a)?;
    let mut dets = vec![delta];
    let mut saturated = false;
    while cols.len() < k {
        let current = hnf(&a.select_columns(&cols)?)?;
        let mut best: Option<(BigInt, usize)> = None;
        for j in (0..n).filter(|j| !cols.contains(j)) {
            if current.coordinates(&a.column(j)).is_some() {
                continue;
            }
            let mut trial = cols.clone();
            trial.push(j);
            let det = lattice_determinant(&a.select_columns(&trial)?)?;
            if best.as_ref().map_or(true, |(b, _)| det < *b) {
                best = Some((det, j));
            }
        }
        match best {
            Some((det, j)) => {
                cols.push(j);
                dets.push(det);
            }
            None => {
                saturated = true;
                break;
            }
        }
    }
    let last = dets.last().expect("chain starts with the basis");
    let certified_bound = if *last == full {
        BigRational::zero()
    } else {
        BigRational::new(last.clone(), BigInt::from(2))
    };
    Ok(SparseBasisChain {
        column_indices: cols,
        dets,
        certified_bound,
        saturated,
    })
}

fn scatter(n: usize, cols: &[usize], vals: &[BigInt]) -> IntVector {
    let mut x = vec![BigInt::zero(); n];
    for (&c, v) in cols.iter().zip(vals) {
        x[c] = v.clone();
    }
    x
}

/// k-sparse `x ∈ Z^n` with `‖Ax − b‖_∞ ≤ δ(A)/2^{k−m+1}`.
///
/// Every prefix of the greedy chain is rounded and the best one kept, so the
/// error never increases with `k`.
pub fn approximate_lattice(
    a: &IntMatrix,
    b: &[BigInt],
    k: usize,
    budget: &Budget,
) -> Result<SparseSolution> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.len(),
        });
    }
    if !has_full_row_rank(a) {
        return Err(Error::RankDeficient);
    }
    check_k(k, m, n)?;
    if hnf(a)?.coordinates(b).is_none() {
        return Err(Error::NotInLattice);
    }
    let chain = select_sparse_basis(a, k, budget)?;
    let target = int_to_rat(b);
    let mut best: Option<(BigRational, IntVector)> = None;
    for len in m..=chain.column_indices.len() {
        let cols = &chain.column_indices[..len];
        let r = hnf_round(&a.select_columns(cols)?, &target)?;
        if best.as_ref().map_or(true, |(e, _)| r.error < *e) {
            best = Some((r.error, scatter(n, cols, &r.x)));
        }
    }
    let (_, x) = best.expect("chain has at least the basis");
    SparseSolution::new(
        a,
        b,
        x,
        NormTag::Linf,
        Some(RootSum::rational(chain.certified_bound)),
    )
}

/// `δ(A)/2^{k−m+1}`.
pub fn theorem_bound(delta: &BigInt, m: usize, k: usize) -> BigRational {
    BigRational::new(delta.clone(), crate::arith::pow2((k - m + 1) as u32))
}

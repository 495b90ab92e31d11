use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::RootSum;
use crate::combin::{binomial, Combinations};
use crate::config::{check, Budget};
use crate::exact_linalg::{hnf, int_to_rat, solve_rational, IntMatrix, IntVector, RatVector};
use crate::lattice_approx::{delta, hnf_round, select_sparse_basis, NormTag, SparseSolution};
use crate::{Error, Result};

/// `m` columns `C` and `w ≥ 0` with `A_C·w = −Σ_{i∈basis} a_i`, if any.
///
/// Such a `C` exists iff the columns positively span `R^m` (Carathéodory plus
/// the fact that `basis ∪ {−Σ basis}` already spans positively).
pub fn caratheodory_completion(
    a: &IntMatrix,
    basis: &[usize],
    budget: &Budget,
) -> Result<Option<(Vec<usize>, RatVector)>> {
    let (m, n) = (a.rows(), a.cols());
    check("subset", binomial(n, m), budget.subsets)?;
    let mut target = vec![BigInt::zero(); m];
    for &j in basis {
        for (t, v) in target.iter_mut().zip(a.column(j)) {
            *t -= v;
        }
    }
    let target = int_to_rat(&target);
    for cols in Combinations::new(n, m) {
        match solve_rational(&a.select_columns(&cols)?, &target) {
            Ok(w) if w.iter().all(|x| !x.is_negative()) => return Ok(Some((cols, w))),
            Ok(_) | Err(Error::Singular) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

pub fn positively_spans(a: &IntMatrix, budget: &Budget) -> Result<bool> {
    let (_, basis) = delta(a, budget)?;
    Ok(caratheodory_completion(a, &basis, budget)?.is_some())
}

fn lcm_of_denominators(vals: &[BigRational]) -> BigInt {
    vals.iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Non-negative k-sparse `x` with `‖Ax − b‖_∞ ≤ δ(A)/2^{k−2m+1}` when the
/// columns of `A` positively span `R^m`.
///
/// Lattice rounding on a chain of `k − m` columns, then each negative entry
/// `x_ℓ a_ℓ` is rewritten via a non-negative combination of the basis and the
/// Carathéodory columns: `x_ℓ a_ℓ = Σ Lμ_j a_j + (1 − L)x_ℓ a_ℓ`.
pub fn approximate_spanning(
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
    if k < 2 * m {
        return Err(Error::BadK {
            k,
            min: 2 * m,
            max: usize::MAX,
        });
    }
    if hnf(a)?.coordinates(b).is_none() {
        return Err(Error::NotInLattice);
    }
    let k_chain = (k - m).min(n);
    let chain = select_sparse_basis(a, k_chain, budget)?;
    let basis = chain.column_indices[..m].to_vec();
    let (cara, w) = caratheodory_completion(a, &basis, budget)?.ok_or(Error::NotSpanning)?;

    let target = int_to_rat(b);
    let mut best: Option<(BigRational, IntVector)> = None;
    for len in m..=chain.column_indices.len() {
        let cols = &chain.column_indices[..len];
        let r = hnf_round(&a.select_columns(cols)?, &target)?;
        if best.as_ref().map_or(true, |(e, _)| r.error < *e) {
            let mut x = vec![BigInt::zero(); n];
            for (&c, v) in cols.iter().zip(&r.x) {
                x[c] = v.clone();
            }
            best = Some((r.error, x));
        }
    }
    let (_, mut x) = best.expect("chain contains the basis");

    let bmat = a.select_columns(&basis)?;
    for l in 0..n {
        if !x[l].is_negative() {
            continue;
        }
        let xl = x[l].clone();
        let v: RatVector = a
            .column(l)
            .iter()
            .map(|c| BigRational::from_integer(c * &xl))
            .collect();
        let y = solve_rational(&bmat, &v)?;
        let t = y
            .iter()
            .map(|yi| -yi)
            .fold(BigRational::zero(), |acc, v| if v > acc { v } else { acc });
        let on_basis: RatVector = y.iter().map(|yi| yi + &t).collect();
        let on_cara: RatVector = w.iter().map(|wi| wi * &t).collect();
        let all: Vec<BigRational> = on_basis.iter().chain(&on_cara).cloned().collect();
        let big_l = BigRational::from_integer(lcm_of_denominators(&all));
        x[l] = (BigInt::one() - big_l.to_integer()) * &xl;
        for (&j, c) in basis.iter().zip(&on_basis) {
            x[j] += (c * &big_l).to_integer();
        }
        for (&j, c) in cara.iter().zip(&on_cara) {
            x[j] += (c * &big_l).to_integer();
        }
    }
    debug_assert!(x.iter().all(|v| !v.is_negative()));
    SparseSolution::new(
        a,
        b,
        x,
        NormTag::Linf,
        Some(RootSum::rational(chain.certified_bound)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn both_signs_scalar() {
        let a = mat(&[vec![1, -1]]);
        let s = approximate_spanning(&a, &ints(&[-5]), 2, &Budget::default()).unwrap();
        assert_eq!(s.x, ints(&[0, 5]));
        assert_eq!(s.error, int(0));
    }

    #[test]
    fn triangle_in_the_plane() {
        let a = mat(&[vec![1, 0, -1], vec![0, 1, -1]]);
        let s = approximate_spanning(&a, &ints(&[-1, -1]), 4, &Budget::default()).unwrap();
        assert_eq!(s.error, int(0));
        assert!(s.is_nonnegative());
        assert!(s.support.len() <= 3);
    }

    #[test]
    fn cone_not_spanning() {
        let a = mat(&[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(
            approximate_spanning(&a, &ints(&[1, 1]), 4, &Budget::default()),
            Err(Error::NotSpanning)
        );
        assert!(!positively_spans(&a, &Budget::default()).unwrap());
        assert!(matches!(
            approximate_spanning(&a, &ints(&[1, 1]), 3, &Budget::default()),
            Err(Error::BadK { .. })
        ));
    }

    #[test]
    fn lifting_keeps_value() {
        let a = mat(&[vec![3, -2, 5, -7], vec![1, 4, -3, 2]]);
        assert!(positively_spans(&a, &Budget::default()).unwrap());
        for b in [[7, -3], [-11, 4], [0, 0], [25, 30]] {
            let b = ints(&b);
            if !crate::exact_linalg::in_lattice(&a, &b).unwrap() {
                continue;
            }
            let s = approximate_spanning(&a, &b, 4, &Budget::default()).unwrap();
            assert!(s.is_nonnegative());
            assert!(s.bound.as_ref().unwrap().ge_rational(&s.error));
        }
    }
}

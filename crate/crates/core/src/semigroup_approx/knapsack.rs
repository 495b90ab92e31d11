use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::bounds::k2_constant;
use super::{find_witness, SemigroupInstance};
use crate::arith::RootSum;
use crate::config::Budget;
use crate::exact_linalg::{IntMatrix, IntVector};
use crate::lattice_approx::{NormTag, SparseSolution};
use crate::{Error, Result};

/// Best `x = λe_1 + μe_i` for `b`, by enumerating every `i ≥ 2` and every
/// `μ ∈ [0, ⌊b/a_i⌋ + 1]` with `λ` the nearest non-negative fit.
///
/// `b` must lie in the semigroup generated by `a`; if `witness` is `None`
/// membership is decided by search.
pub fn approximate_k2(
    a: &[BigInt],
    b: &BigInt,
    witness: Option<&[BigInt]>,
    budget: &Budget,
) -> Result<SparseSolution> {
    if a.is_empty() {
        return Err(Error::BadInput("empty generator list".into()));
    }
    if a.iter().any(|x| !x.is_positive()) {
        return Err(Error::BadInput("generators must be positive".into()));
    }
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::BadInput("generators must be sorted".into()));
    }
    let n = a.len();
    let mat = IntMatrix::new(1, n, a.to_vec())?;
    match witness {
        Some(w) => {
            if w.len() != n || w.iter().any(|x| x.is_negative()) {
                return Err(Error::BadInput("witness must be non-negative of length n".into()));
            }
            let total: BigInt = a.iter().zip(w).map(|(x, y)| x * y).sum();
            if &total != b {
                return Err(Error::BadInput("witness does not reproduce b".into()));
            }
        }
        None => {
            let inst = SemigroupInstance::with_leading_basis(mat.clone())?;
            find_witness(&inst, std::slice::from_ref(b), budget)?;
        }
    }
    let a1 = &a[0];
    let mut best: Option<(BigInt, IntVector)> = None;
    let mut consider = |lam: BigInt, i: usize, mu: BigInt| {
        let err = (&lam * a1 + &mu * &a[i] - b).abs();
        if best.as_ref().map_or(true, |(e, _)| err < *e) {
            let mut x = vec![BigInt::zero(); n];
            x[0] = lam;
            if i > 0 {
                x[i] += mu;
            }
            best = Some((err, x));
        }
    };
    for i in 0..n {
        let cap = if i == 0 { BigInt::zero() } else { b.div_floor(&a[i]) + 1 };
        let mut mu = BigInt::zero();
        while mu <= cap {
            let rest = b - &mu * &a[i];
            if rest.is_negative() {
                consider(BigInt::zero(), i, mu.clone());
            } else {
                let lo = rest.div_floor(a1);
                consider(lo.clone(), i, mu.clone());
                consider(lo + 1, i, mu.clone());
            }
            mu += 1;
        }
    }
    let (_, x) = best.expect("at least one candidate");
    let bound = k2_constant(n) * BigRational::from_integer(a1.clone());
    SparseSolution::new(
        &mat,
        std::slice::from_ref(b),
        x,
        NormTag::Linf,
        Some(RootSum::rational(bound)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn three_generators() {
        let a = ints(&[4, 9, 10]);
        let s = approximate_k2(&a, &BigInt::from(23), None, &Budget::default()).unwrap();
        assert!(s.error <= int(1));
        assert_eq!(s.bound.unwrap().as_rational(), Some(int(1)));
        assert!(s.support.iter().filter(|&&i| i != 0).count() <= 1);
    }

    #[test]
    fn multiples_of_a1_are_exact() {
        let a = ints(&[7, 11, 12, 30]);
        let s = approximate_k2(&a, &BigInt::from(35), None, &Budget::default()).unwrap();
        assert_eq!(s.error, int(0));
        // 2/7 · 7
        assert_eq!(s.bound.unwrap().as_rational(), Some(int(2)));
    }

    #[test]
    fn rejects_bad_input() {
        let b = BigInt::from(5);
        assert!(approximate_k2(&ints(&[3, 2]), &b, None, &Budget::default()).is_err());
        assert!(approximate_k2(&ints(&[0, 2]), &b, None, &Budget::default()).is_err());
        assert_eq!(
            approximate_k2(&ints(&[4, 6]), &b, None, &Budget::default()),
            Err(Error::NoWitness)
        );
        assert!(approximate_k2(&ints(&[2, 3]), &b, Some(&ints(&[1, 0])), &Budget::default()).is_err());
    }
}

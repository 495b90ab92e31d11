use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::config::{check, Budget};
use crate::exact_linalg::IntVector;
use crate::{Error, Result};

/// Every `λ ≥ 0` with `Σλ_i a_i = b` and `Σλ_i ≤ max_sum`, in lexicographic order.
pub fn representations(
    a: &[BigInt],
    b: &BigInt,
    max_sum: usize,
    budget: &Budget,
) -> Result<Vec<IntVector>> {
    if a.iter().any(|x| !x.is_positive()) {
        return Err(Error::BadInput("generators must be positive".into()));
    }
    fn rec(
        a: &[BigInt],
        rest: &BigInt,
        left: usize,
        cur: &mut IntVector,
        out: &mut Vec<IntVector>,
        nodes: &mut u64,
        limit: u64,
    ) -> Result<()> {
        *nodes += 1;
        check("node", *nodes as u128, limit)?;
        let i = cur.len();
        if i == a.len() {
            if rest.is_zero() {
                out.push(cur.clone());
            }
            return Ok(());
        }
        let mut r = rest.clone();
        let mut l = 0usize;
        loop {
            cur.push(BigInt::from(l));
            rec(a, &r, left - l, cur, out, nodes, limit)?;
            cur.pop();
            r -= &a[i];
            l += 1;
            if l > left || r.is_negative() {
                break;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    let mut nodes = 0u64;
    rec(a, b, max_sum, &mut Vec::new(), &mut out, &mut nodes, budget.nodes)?;
    Ok(out)
}

/// `b` has exactly one representation with coefficient sum `≤ max_sum`.
pub fn verify_unique_representation(
    a: &[BigInt],
    b: &BigInt,
    max_sum: usize,
    budget: &Budget,
) -> Result<bool> {
    Ok(representations(a, b, max_sum, budget)?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        let b = Budget::default();
        let a = ints(&[4, 9, 10]);
        let reps = representations(&a, &BigInt::from(23), 3, &b).unwrap();
        assert_eq!(reps, vec![ints(&[1, 1, 1])]);
        assert!(verify_unique_representation(&a, &BigInt::from(4), 5, &b).unwrap());
        assert!(!verify_unique_representation(&ints(&[2, 3]), &BigInt::from(6), 5, &b).unwrap());
        assert!(!verify_unique_representation(&ints(&[4, 6]), &BigInt::from(5), 5, &b).unwrap());
    }
}

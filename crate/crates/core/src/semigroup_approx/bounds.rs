use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SemigroupInstance;
use crate::arith::{pow2, RootSum};
use crate::Result;

/// `t_i` with `t_0 = 1`, `t_i = t_{i−1}(t_{i−1} + 1)`.
pub fn sylvester_t(i: usize) -> BigInt {
    let mut t = BigInt::one();
    for _ in 0..i {
        t = &t * (&t + 1u32);
    }
    t
}

/// `φ(n) = Σ_{i=1}^n 1/t_i`.
pub fn sylvester_phi(n: usize) -> BigRational {
    let mut t = BigInt::one();
    let mut acc = BigRational::zero();
    for _ in 0..n {
        t = &t * (&t + 1u32);
        acc += BigRational::new(BigInt::one(), t.clone());
    }
    acc
}

/// `φ(n−2)/(2φ(n−2)+1)`, the k = 2 constant; 0 for `n ≤ 2`.
pub fn k2_constant(n: usize) -> BigRational {
    if n <= 2 {
        return BigRational::zero();
    }
    let phi = sylvester_phi(n - 2);
    &phi / (&phi * BigRational::from_integer(2.into()) + BigRational::one())
}

/// Error bound for one support reduction with `s` non-basis generators:
/// `((μΔ)^{m−1}/2^s)^{1/m}`, measured in `‖·‖_{P(B)}`.
pub fn support_step_bound(m: usize, mu_delta: &BigInt, s: usize) -> RootSum {
    let mut out = RootSum::new(m as u32);
    out.push(
        BigRational::one(),
        BigRational::new(mu_delta.pow(m as u32 - 1), pow2(s as u32)),
    );
    out
}

/// `(1/(2^{1/m} − 1))·(2^{−(k−m)/m} − 2^{−(n−m)/m})·(μΔ)^{(m−1)/m}`, written as
/// the sum `Σ_{s=k−m+1}^{n−m} ((μΔ)^{m−1}/2^s)^{1/m}` it telescopes from.
pub fn recursive_bound(m: usize, n: usize, k: usize, mu_delta: &BigInt) -> RootSum {
    let mut out = RootSum::new(m as u32);
    let top = BigRational::from_integer(mu_delta.pow(m as u32 - 1));
    for s in (k - m + 1)..=(n - m) {
        out.push(
            BigRational::one(),
            &top / BigRational::from_integer(pow2(s as u32)),
        );
    }
    out
}

/// Least `n` with `μ^{m−1}·Δ^{2m−1} < 2^{n−m}`; for such `n` every target has
/// an exact representation using at most `n − 1` columns.
pub fn exact_threshold(inst: &SemigroupInstance) -> Result<usize> {
    inst.require_simplicial()?;
    let m = inst.m() as u32;
    // μ^{m−1}Δ^{2m−1} = (μΔ)^{m−1}·Δ^m
    let lhs = inst.mu_delta().pow(m - 1) * inst.delta().pow(m);
    let mut e = 0usize;
    while pow2(e as u32) <= lhs {
        e += 1;
    }
    Ok(inst.m() + e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::exact_linalg::IntMatrix;

    #[test]
    fn sylvester_values() {
        assert_eq!(sylvester_t(0), BigInt::from(1));
        assert_eq!(sylvester_t(3), BigInt::from(42));
        assert_eq!(sylvester_phi(0), int(0));
        assert_eq!(sylvester_phi(1), rat(1, 2));
        assert_eq!(sylvester_phi(2), rat(2, 3));
        assert_eq!(sylvester_phi(3), rat(29, 42));
        assert_eq!(k2_constant(3), rat(1, 4));
        assert_eq!(k2_constant(4), rat(2, 7));
        assert_eq!(k2_constant(5), rat(29, 100));
    }

    #[test]
    fn recursive_bound_m1() {
        // (1/2^{k−1} − 1/2^{n−1}) at n = 4, k = 2: 1/2 − 1/8
        let b = recursive_bound(1, 4, 2, &BigInt::from(11));
        assert_eq!(b.as_rational(), Some(rat(3, 8)));
        assert!(recursive_bound(2, 5, 5, &BigInt::from(7)).is_zero());
    }

    #[test]
    fn thresholds() {
        let one = SemigroupInstance::with_leading_basis(
            IntMatrix::from_rows(&[vec![4, 9, 10]]).unwrap(),
        )
        .unwrap();
        assert_eq!(exact_threshold(&one).unwrap(), 4);
        let unit = SemigroupInstance::with_leading_basis(IntMatrix::identity(2)).unwrap();
        assert_eq!(exact_threshold(&unit).unwrap(), 3);
        // Δ = 3, μΔ = 6
        let a = IntMatrix::from_rows(&[vec![3, 0, 6], vec![0, 1, 1]]).unwrap();
        let inst = SemigroupInstance::with_leading_basis(a).unwrap();
        assert_eq!(inst.mu(), int(2));
        assert_eq!(exact_threshold(&inst).unwrap(), 8);
    }
}

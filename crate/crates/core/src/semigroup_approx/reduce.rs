//! Non-negative approximation on a simplicial instance: shrink the witness to
//! the finite set `S`, then repeatedly merge comparable subsums to drop
//! generators from the support.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::bounds::{recursive_bound, support_step_bound};
use super::SemigroupInstance;
use crate::arith::{pow2, rat, round_half_up, RootSum};
use crate::config::{check, Budget};
use crate::exact_linalg::{linf_int, IntVector};
use crate::lattice_approx::{NormTag, SparseSolution};
use crate::{Error, Result};

/// Output of [`reduce_to_s`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    /// Full coefficient vector; basis entries include the credit.
    pub lambda: IntVector,
    /// Basis multiples moved out of the non-basis part, indexed like `basis()`.
    pub credit: IntVector,
}

fn nonbasis_sum(inst: &SemigroupInstance, lambda: &[BigInt]) -> BigInt {
    inst.non_basis().iter().map(|&j| lambda[j].clone()).sum()
}

fn check_lambda(inst: &SemigroupInstance, lambda: &[BigInt]) -> Result<()> {
    if lambda.len() != inst.n() {
        return Err(Error::DimensionMismatch {
            expected: inst.n(),
            found: lambda.len(),
        });
    }
    if lambda.iter().any(|l| l.is_negative()) {
        return Err(Error::BadInput("coefficients must be non-negative".into()));
    }
    Ok(())
}

/// Removes blocks of generators whose sum lies in `B·Z^m` until the non-basis
/// coefficients sum to at most `|det B|`. `A·λ` is unchanged.
pub fn reduce_to_s(inst: &SemigroupInstance, lambda: &[BigInt]) -> Result<Reduced> {
    inst.require_simplicial()?;
    check_lambda(inst, lambda)?;
    let m = inst.m();
    let delta = inst.delta().clone();
    let mut lambda = lambda.to_vec();
    let mut credit = vec![BigInt::zero(); m];
    let non_basis = inst.non_basis();
    while nonbasis_sum(inst, &lambda) > delta {
        // Walk the first Δ+1 partial sums; two of them share a coset.
        let mut seen: HashMap<IntVector, (usize, IntVector)> = HashMap::new();
        let mut prefix = vec![BigInt::zero(); m];
        let mut taken: IntVector = vec![BigInt::zero(); inst.n()];
        seen.insert(prefix.iter().map(|x| x.mod_floor(&delta)).collect(), (0, taken.clone()));
        let mut step = 0usize;
        let mut found = None;
        'scan: for &j in &non_basis {
            let mut c = BigInt::zero();
            while c < lambda[j] {
                c += 1;
                step += 1;
                taken[j] += 1;
                for (p, w) in prefix.iter_mut().zip(inst.column_coords(j)) {
                    *p += w;
                }
                let key: IntVector = prefix.iter().map(|x| x.mod_floor(&delta)).collect();
                if let Some((_, before)) = seen.get(&key) {
                    found = Some((before.clone(), taken.clone()));
                    break 'scan;
                }
                seen.insert(key, (step, taken.clone()));
            }
        }
        let (before, after) = found.ok_or_else(|| {
            Error::InternalPigeonholeViolation("no repeated coset among partial sums".into())
        })?;
        let block: IntVector = after.iter().zip(&before).map(|(a, b)| a - b).collect();
        let w = inst.weighted_coords(&block);
        for (i, &bj) in inst.basis().iter().enumerate() {
            let q = &w[i] / &delta;
            debug_assert!((&q * &delta) == w[i] && !q.is_negative());
            credit[i] += &q;
            lambda[bj] += q;
        }
        for j in &non_basis {
            lambda[*j] -= &block[*j];
        }
    }
    Ok(Reduced { lambda, credit })
}

/// One support reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeStep {
    pub lambda: IntVector,
    /// `‖A·λ_new − A·λ_old‖_{P(B)}`.
    pub increment: BigRational,
    /// Guaranteed bound on `increment` for this support size.
    pub step_bound: RootSum,
    /// Non-basis support size before the step.
    pub support_before: usize,
    pub dropped: Vec<usize>,
    pub doubled: Vec<usize>,
    pub basis_shift: IntVector,
}

/// Finds disjoint generator sets `P`, `N ≠ ∅` and basis multiples `μ ≥ 0`
/// with `‖μB + Σ_P λ_i a_i − Σ_N λ_j a_j‖_{P(B)} ≤ ((μΔ)^{m−1}/2^s)^{1/m}`,
/// doubles the coefficients on `P` and zeroes them on `N`.
///
/// Assignments are visited in ternary reflected Gray-code order and the first
/// admissible one is taken.
pub fn reduce_support_once(
    inst: &SemigroupInstance,
    lambda: &[BigInt],
    budget: &Budget,
) -> Result<MergeStep> {
    inst.require_simplicial()?;
    check_lambda(inst, lambda)?;
    let m = inst.m();
    let delta = inst.delta().clone();
    let support: Vec<usize> = inst
        .non_basis()
        .into_iter()
        .filter(|&j| !lambda[j].is_zero())
        .collect();
    let s = support.len();
    let step_bound = support_step_bound(m, inst.mu_delta(), s);
    if s == 0 {
        return Ok(MergeStep {
            lambda: lambda.to_vec(),
            increment: BigRational::zero(),
            step_bound,
            support_before: 0,
            dropped: vec![],
            doubled: vec![],
            basis_shift: vec![BigInt::zero(); m],
        });
    }
    check("subset", 3u128.saturating_pow(s as u32), budget.subsets)?;
    let sigma: Vec<IntVector> = support
        .iter()
        .map(|&j| {
            inst.column_coords(j)
                .iter()
                .map(|w| w * &lambda[j])
                .collect()
        })
        .collect();
    let limit = inst.mu_delta().pow(m as u32 - 1) * delta.pow(m as u32);
    let scale = pow2(s as u32);
    let mut digits = vec![0u8; s];
    let mut dir = vec![1i8; s];
    let mut acc = vec![BigInt::zero(); m];
    let mut n_count = 0usize;
    loop {
        if n_count > 0 {
            let shift: IntVector = acc
                .iter()
                .map(|c| {
                    let r = round_half_up(&BigRational::new(-c, delta.clone()));
                    if r.is_negative() {
                        BigInt::zero()
                    } else {
                        r
                    }
                })
                .collect();
            let v: IntVector = acc
                .iter()
                .zip(&shift)
                .map(|(c, mu)| c + mu * &delta)
                .collect();
            let worst = linf_int(&v);
            if worst.pow(m as u32) * &scale <= limit {
                let mut next = lambda.to_vec();
                let mut dropped = vec![];
                let mut doubled = vec![];
                for (t, &j) in support.iter().enumerate() {
                    match digits[t] {
                        1 => {
                            next[j] = &lambda[j] * 2;
                            doubled.push(j);
                        }
                        2 => {
                            next[j] = BigInt::zero();
                            dropped.push(j);
                        }
                        _ => {}
                    }
                }
                for (i, &bj) in inst.basis().iter().enumerate() {
                    next[bj] += &shift[i];
                }
                return Ok(MergeStep {
                    lambda: next,
                    increment: BigRational::new(worst, delta),
                    step_bound,
                    support_before: s,
                    dropped,
                    doubled,
                    basis_shift: shift,
                });
            }
        }
        // advance the Gray code by one digit
        let mut t = 0;
        while t < s {
            let nd = digits[t] as i8 + dir[t];
            if (0..=2).contains(&nd) {
                let coef = |d: u8| -> i32 {
                    match d {
                        1 => 1,
                        2 => -1,
                        _ => 0,
                    }
                };
                let change = coef(nd as u8) - coef(digits[t]);
                for (a, w) in acc.iter_mut().zip(&sigma[t]) {
                    *a += w * change;
                }
                if digits[t] == 2 {
                    n_count -= 1;
                }
                if nd == 2 {
                    n_count += 1;
                }
                digits[t] = nd as u8;
                break;
            }
            dir[t] = -dir[t];
            t += 1;
        }
        if t == s {
            return Err(Error::InternalPigeonholeViolation(format!(
                "no admissible merge among 3^{s} assignments"
            )));
        }
    }
}

/// A non-negative integer `λ` with `A·λ = b` whose non-basis part sums to at
/// most `|det B|`. Every witness reduces to one of this form, so the search
/// is complete.
pub fn find_witness(inst: &SemigroupInstance, b: &[BigInt], budget: &Budget) -> Result<IntVector> {
    inst.require_simplicial()?;
    let target = inst.coords(b)?;
    if target.iter().any(|x| x.is_negative()) {
        return Err(Error::NoWitness);
    }
    let cols: Vec<usize> = inst
        .non_basis()
        .into_iter()
        .filter(|&j| inst.column_coords(j).iter().any(|w| !w.is_zero()))
        .collect();
    let mut lambda = vec![BigInt::zero(); inst.n()];
    let mut nodes = 0u128;
    let found = witness_dfs(inst, &cols, 0, target, inst.delta().clone(), &mut lambda, &mut nodes, budget)?;
    match found {
        Some(rest) => {
            for (i, &bj) in inst.basis().iter().enumerate() {
                lambda[bj] = &rest[i] / inst.delta();
            }
            Ok(lambda)
        }
        None => Err(Error::NoWitness),
    }
}

#[allow(clippy::too_many_arguments)]
fn witness_dfs(
    inst: &SemigroupInstance,
    cols: &[usize],
    pos: usize,
    rest: IntVector,
    room: BigInt,
    lambda: &mut IntVector,
    nodes: &mut u128,
    budget: &Budget,
) -> Result<Option<IntVector>> {
    *nodes += 1;
    check("node", *nodes, budget.nodes)?;
    if pos == cols.len() {
        let d = inst.delta();
        return Ok(rest
            .iter()
            .all(|x| x.mod_floor(d).is_zero())
            .then_some(rest));
    }
    let j = cols[pos];
    let w = inst.column_coords(j).clone();
    let mut cur = rest;
    let mut c = BigInt::zero();
    loop {
        lambda[j] = c.clone();
        if let Some(done) = witness_dfs(inst, cols, pos + 1, cur.clone(), &room - &c, lambda, nodes, budget)? {
            return Ok(Some(done));
        }
        c += 1;
        if c > room {
            break;
        }
        for (x, wi) in cur.iter_mut().zip(&w) {
            *x -= wi;
        }
        if cur.iter().any(|x| x.is_negative()) {
            break;
        }
    }
    lambda[j] = BigInt::zero();
    Ok(None)
}

/// Full trace of [`approximate_semigroup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupTrace {
    pub solution: SparseSolution,
    pub steps: Vec<MergeStep>,
    /// Error of the merged representation before comparing with basis rounding.
    pub constructed_error: BigRational,
    pub used_fallback: bool,
}

/// `x ≥ 0` with at most `k − m` non-basis columns and
/// `‖Ax − b‖_{P(B)}` within the recursive bound (and never above 1/2).
pub fn approximate_semigroup(
    inst: &SemigroupInstance,
    b: &[BigInt],
    witness: Option<&[BigInt]>,
    k: usize,
    budget: &Budget,
) -> Result<SparseSolution> {
    Ok(semigroup_trace(inst, b, witness, k, budget)?.solution)
}

pub fn semigroup_trace(
    inst: &SemigroupInstance,
    b: &[BigInt],
    witness: Option<&[BigInt]>,
    k: usize,
    budget: &Budget,
) -> Result<SemigroupTrace> {
    inst.require_simplicial()?;
    let (m, n) = (inst.m(), inst.n());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.len(),
        });
    }
    if k < m || k > n {
        return Err(Error::BadK { k, min: m, max: n });
    }
    let lambda = match witness {
        Some(w) => {
            check_lambda(inst, w)?;
            if inst.matrix().mul_vec(w)? != b {
                return Err(Error::BadInput("witness does not reproduce b".into()));
            }
            w.to_vec()
        }
        None => find_witness(inst, b, budget)?,
    };
    let tag = NormTag::Pnorm {
        basis: inst.basis().to_vec(),
    };
    let a = inst.matrix();
    let mut bound = recursive_bound(m, n, k, inst.mu_delta());
    let half = rat(1, 2);
    if bound.ge_rational(&half) {
        bound = RootSum::rational(half);
    }
    if k == n {
        let solution = SparseSolution::new(a, b, lambda, tag, Some(bound))?;
        return Ok(SemigroupTrace {
            constructed_error: solution.error.clone(),
            solution,
            steps: vec![],
            used_fallback: false,
        });
    }
    let mut lambda = lambda;
    let mut steps = vec![];
    loop {
        lambda = reduce_to_s(inst, &lambda)?.lambda;
        let s = inst
            .non_basis()
            .iter()
            .filter(|&&j| !lambda[j].is_zero())
            .count();
        if s <= k - m {
            break;
        }
        let step = reduce_support_once(inst, &lambda, budget)?;
        lambda = step.lambda.clone();
        steps.push(step);
    }
    let constructed = SparseSolution::new(a, b, lambda, tag.clone(), Some(bound.clone()))?;
    let fallback = {
        let w = inst.coords(b)?;
        let mut x = vec![BigInt::zero(); n];
        for (i, &bj) in inst.basis().iter().enumerate() {
            x[bj] = round_half_up(&BigRational::new(w[i].clone(), inst.delta().clone()));
        }
        SparseSolution::new(a, b, x, tag, Some(bound))?
    };
    let constructed_error = constructed.error.clone();
    let used_fallback = fallback.error < constructed.error;
    let solution = if used_fallback { fallback } else { constructed };
    debug_assert!(solution.is_nonnegative());
    Ok(SemigroupTrace {
        solution,
        steps,
        constructed_error,
        used_fallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::exact_linalg::IntMatrix;

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn one_dim(a: &[i64]) -> SemigroupInstance {
        SemigroupInstance::with_leading_basis(IntMatrix::from_rows(&[a.to_vec()]).unwrap()).unwrap()
    }

    #[test]
    fn reduce_scalar_block() {
        let inst = one_dim(&[4, 9]);
        let r = reduce_to_s(&inst, &ints(&[0, 5])).unwrap();
        assert_eq!(r.lambda, ints(&[9, 1]));
        assert_eq!(r.credit, ints(&[9]));
    }

    #[test]
    fn reduce_is_identity_when_small() {
        let inst = one_dim(&[4, 9]);
        let r = reduce_to_s(&inst, &ints(&[2, 3])).unwrap();
        assert_eq!(r.lambda, ints(&[2, 3]));
        assert_eq!(r.credit, ints(&[0]));
    }

    #[test]
    fn reduce_two_dim_blocks() {
        let a = IntMatrix::from_rows(&[vec![2, 0, 1], vec![0, 2, 1]]).unwrap();
        let inst = SemigroupInstance::with_leading_basis(a.clone()).unwrap();
        let r = reduce_to_s(&inst, &ints(&[0, 0, 6])).unwrap();
        // blocks of two copies of (1,1) are (2,2) = a_1 + a_2
        assert_eq!(r.lambda, ints(&[1, 1, 4]));
        assert_eq!(r.credit, ints(&[1, 1]));
        assert_eq!(a.mul_vec(&r.lambda).unwrap(), ints(&[6, 6]));
    }

    #[test]
    fn one_merge_scalar() {
        let inst = one_dim(&[4, 9, 10, 11]);
        let lam = ints(&[0, 1, 1, 1]);
        let step = reduce_support_once(&inst, &lam, &Budget::default()).unwrap();
        assert_eq!(step.support_before, 3);
        assert!(step.increment <= rat(1, 2));
        assert!(step.step_bound.ge_rational(&step.increment));
        let nonbasis = step.lambda[1..].iter().filter(|x| !x.is_zero()).count();
        assert!(nonbasis < 3);
        assert!(step.lambda.iter().all(|x| !x.is_negative()));
        let before = inst.matrix().mul_vec(&lam).unwrap();
        let after = inst.matrix().mul_vec(&step.lambda).unwrap();
        let diff: IntVector = after.iter().zip(&before).map(|(x, y)| x - y).collect();
        assert_eq!(inst.pnorm(&diff).unwrap(), step.increment);
    }

    #[test]
    fn full_support_is_exact() {
        let inst = one_dim(&[4, 9, 10, 11]);
        let s = approximate_semigroup(&inst, &ints(&[30]), Some(&ints(&[0, 1, 1, 1])), 4, &Budget::default())
            .unwrap();
        assert_eq!(s.x, ints(&[0, 1, 1, 1]));
        assert_eq!(s.error, int(0));
    }

    #[test]
    fn k2_scalar_bound() {
        let inst = one_dim(&[4, 9, 10, 11]);
        let s = approximate_semigroup(&inst, &ints(&[30]), Some(&ints(&[0, 1, 1, 1])), 2, &Budget::default())
            .unwrap();
        assert!(s.is_nonnegative());
        // (1/2 − 1/8)·4 in absolute terms is 3/8 in P(B) units
        assert!(s.error <= rat(3, 8));
        assert!(s.x[1..].iter().filter(|x| !x.is_zero()).count() <= 1);
    }

    #[test]
    fn witness_search() {
        let inst = one_dim(&[4, 9, 10]);
        let w = find_witness(&inst, &ints(&[23]), &Budget::default()).unwrap();
        assert_eq!(inst.matrix().mul_vec(&w).unwrap(), ints(&[23]));
        assert_eq!(
            find_witness(&inst, &ints(&[7]), &Budget::default()),
            Err(Error::NoWitness)
        );
        assert_eq!(
            find_witness(&inst, &ints(&[-4]), &Budget::default()),
            Err(Error::NoWitness)
        );
    }

    #[test]
    fn rejects_non_simplicial() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 4], vec![0, 1, -4]]).unwrap();
        let inst = SemigroupInstance::with_leading_basis(a).unwrap();
        assert_eq!(
            reduce_to_s(&inst, &ints(&[0, 0, 1])),
            Err(Error::NotSimplicial)
        );
        assert_eq!(
            approximate_semigroup(&inst, &ints(&[4, -4]), None, 2, &Budget::default()),
            Err(Error::NotSimplicial)
        );
    }
}

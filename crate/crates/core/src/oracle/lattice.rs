use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::cvp::{integer_target, rounding_radius, TriangularSearch};
use super::{EnumerationStats, OracleReport};
use crate::arith::lcm_all;
use crate::combin::{binomial, Combinations};
use crate::config::{check, Budget};
use crate::exact_linalg::{has_full_row_rank, hnf, lattice_intersection, HnfResult, IntMatrix, IntVector};
use crate::{Error, Result};

/// The distinct lattices `Λ_I = A_I·Z^k` over full-row-rank `k`-subsets `I`,
/// each tagged with the lexicographically first `I` producing it.
struct Supports {
    items: Vec<(Vec<usize>, HnfResult)>,
    subsets: u64,
}

fn supports(a: &IntMatrix, k: usize, budget: &Budget) -> Result<Supports> {
    let (m, n) = (a.rows(), a.cols());
    if k < m || k > n {
        return Err(Error::BadK { k, min: m, max: n });
    }
    if !has_full_row_rank(a) {
        return Err(Error::RankDeficient);
    }
    check("subset", binomial(n, k), budget.subsets)?;
    let mut items: Vec<(Vec<usize>, HnfResult)> = Vec::new();
    let mut subsets = 0u64;
    for cols in Combinations::new(n, k) {
        subsets += 1;
        let sub = a.select_columns(&cols)?;
        if !has_full_row_rank(&sub) {
            continue;
        }
        let res = hnf(&sub)?;
        if items.iter().all(|(_, r)| r.h != res.h) {
            items.push((cols, res));
        }
    }
    // Small determinants first: they tend to give the smallest distances.
    items.sort_by(|x, y| x.1.det_lambda.cmp(&y.1.det_lambda).then_with(|| x.0.cmp(&y.0)));
    Ok(Supports { items, subsets })
}

struct Best {
    dist: BigRational,
    support: Vec<usize>,
    x: IntVector,
}

/// `min_I dist_∞(b, Λ_I)` with early exit once the minimum is `≤ floor`.
fn objective(
    a: &IntMatrix,
    sup: &Supports,
    b: &[BigInt],
    floor: Option<&BigRational>,
    nodes: &mut u64,
    limit: u64,
) -> Result<Option<Best>> {
    let target = integer_target(b);
    let mut best: Option<Best> = None;
    for (cols, res) in &sup.items {
        let seed = rounding_radius(&res.h) + BigRational::from_integer(1.into());
        let bound = match &best {
            Some(bst) if bst.dist < seed => bst.dist.clone(),
            _ => seed,
        };
        let (used, found) =
            TriangularSearch::below(&res.h, &target, bound, limit.saturating_sub(*nodes)).run()?;
        *nodes += used;
        if let Some((z, dist)) = found {
            let improves = best.as_ref().map_or(true, |bst| dist < bst.dist);
            if improves {
                let mut x = vec![BigInt::zero(); a.cols()];
                for (&c, v) in cols.iter().zip(res.lift(&z)) {
                    x[c] = v;
                }
                best = Some(Best {
                    dist,
                    support: cols.clone(),
                    x,
                });
            }
        }
        if let (Some(bst), Some(f)) = (&best, floor) {
            if bst.dist <= *f {
                return Ok(None);
            }
        }
    }
    Ok(best)
}

/// `min` over full-row-rank `k`-subsets `I` of `dist_∞(b, A_I·Z^k)`, with
/// the minimizing support.
///
/// Rank-deficient supports are ignored: along `b + t·p` with `p` in the
/// periodicity lattice and outside every proper subspace their distance grows
/// without bound, so they never change the worst case over `b`.
pub fn lattice_objective(
    a: &IntMatrix,
    b: &[BigInt],
    k: usize,
    budget: &Budget,
) -> Result<(BigRational, Vec<usize>)> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let sup = supports(a, k, budget)?;
    let mut nodes = 0;
    let best = objective(a, &sup, b, None, &mut nodes, budget.nodes)?
        .expect("a full-row-rank support exists");
    Ok((best.dist, best.support))
}

/// `M = lcm_I det Λ_I`; the objective is periodic modulo `M·Z^m`.
pub fn periodicity_modulus(a: &IntMatrix, k: usize, budget: &Budget) -> Result<BigInt> {
    let sup = supports(a, k, budget)?;
    Ok(lcm_all(sup.items.iter().map(|(_, r)| &r.det_lambda)))
}

/// Coset representatives of `AZ^n / P` inside the box `∏[0, P_ii)`, in
/// lexicographic order. `P` must be lower triangular and `P ⊆ AZ^n`.
fn coset_representatives(ha: &IntMatrix, p: &IntMatrix) -> Vec<IntVector> {
    fn rec(ha: &IntMatrix, p: &IntMatrix, z: &mut IntVector, v: &mut IntVector, out: &mut Vec<IntVector>) {
        let i = z.len();
        if i == ha.rows() {
            out.push(v.clone());
            return;
        }
        let mut partial = BigInt::zero();
        for (j, zj) in z.iter().enumerate() {
            partial += &ha[(i, j)] * zj;
        }
        let hii = &ha[(i, i)];
        let lo: BigInt = (-&partial).div_ceil(hii);
        let hi = (&p[(i, i)] - &partial - 1u32).div_floor(hii);
        let mut zi = lo;
        while zi <= hi {
            v.push(&partial + hii * &zi);
            z.push(zi.clone());
            rec(ha, p, z, v, out);
            z.pop();
            v.pop();
            zi += 1;
        }
    }
    let mut out = Vec::new();
    rec(ha, p, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// `app_{Z^n,k,‖·‖_∞}(A) = max_{b ∈ AZ^n} min_{|supp x| ≤ k} ‖Ax − b‖_∞`.
///
/// Every `Λ_I` contains `P = ∩_I Λ_I` (which in turn contains `M·Z^m`), so
/// the inner minimum is `P`-periodic and the maximum over `b` is attained on
/// one of the `det P / det AZ^n` coset representatives in the box
/// `∏[0, P_ii)`. The witness is the lexicographically smallest maximizer
/// among those representatives.
pub fn lattice_app(a: &IntMatrix, k: usize, budget: &Budget) -> Result<OracleReport> {
    let sup = supports(a, k, budget)?;
    let mut period = sup.items[0].1.h.clone();
    for (_, r) in &sup.items[1..] {
        period = lattice_intersection(&period, &r.h)?;
    }
    let ha = hnf(a)?;
    let count = hnf(&period)?.det_lambda.div_floor(&ha.det_lambda);
    check("target", count.try_into().unwrap_or(u128::MAX), budget.targets)?;
    let reps = coset_representatives(&ha.h, &period);

    let mut nodes = 0u64;
    let mut best: Option<(IntVector, Best)> = None;
    for v in &reps {
        let floor = best.as_ref().map(|(_, b)| b.dist.clone());
        if let Some(found) = objective(a, &sup, v, floor.as_ref(), &mut nodes, budget.nodes)? {
            best = Some((v.clone(), found));
        }
    }
    let (witness_b, found) = best.expect("at least the zero coset");
    Ok(OracleReport {
        value: found.dist,
        witness_b,
        witness_support: found.support,
        witness_x: found.x,
        stats: EnumerationStats {
            supports: sup.subsets,
            targets: reps.len() as u64,
            nodes,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn two_and_three() {
        // Example with δ = 2: 1 is not in 2Z or 3Z, distance 1.
        let r = lattice_app(&mat(&[vec![2, 3]]), 1, &Budget::default()).unwrap();
        assert_eq!(r.value, int(1));
        assert_eq!(r.witness_b, vec![BigInt::from(1)]);
        let (v, s) = lattice_objective(&mat(&[vec![2, 3]]), &r.witness_b, 1, &Budget::default()).unwrap();
        assert_eq!(v, r.value);
        assert_eq!(s, r.witness_support);
    }

    #[test]
    fn full_support_is_exact() {
        let a = mat(&[vec![1, 0, 4], vec![0, 1, 7]]);
        assert_eq!(lattice_app(&a, 3, &Budget::default()).unwrap().value, int(0));
    }

    #[test]
    fn three_primes() {
        // q = (15, 10, 6)
        let a = mat(&[vec![15, 10, 6]]);
        let vals: Vec<_> = (1..=3)
            .map(|k| lattice_app(&a, k, &Budget::default()).unwrap().value)
            .collect();
        assert_eq!(vals, vec![int(3), int(1), int(0)]);
    }

    #[test]
    fn witness_reproduces_value() {
        let a = mat(&[vec![2, 1, 0, 3], vec![0, 1, 3, 1]]);
        let r = lattice_app(&a, 2, &Budget::default()).unwrap();
        let (v, _) = lattice_objective(&a, &r.witness_b, 2, &Budget::default()).unwrap();
        assert_eq!(v, r.value);
        let res: Vec<BigInt> = a
            .mul_vec(&r.witness_x)
            .unwrap()
            .iter()
            .zip(&r.witness_b)
            .map(|(p, q)| p - q)
            .collect();
        assert_eq!(BigRational::from_integer(crate::exact_linalg::linf_int(&res)), r.value);
    }

    #[test]
    fn bad_k() {
        let a = mat(&[vec![1, 2]]);
        assert!(matches!(lattice_app(&a, 0, &Budget::default()), Err(Error::BadK { .. })));
        assert!(matches!(lattice_app(&a, 3, &Budget::default()), Err(Error::BadK { .. })));
    }
}

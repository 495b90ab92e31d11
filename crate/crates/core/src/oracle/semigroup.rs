use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{EnumerationStats, OracleReport};
use crate::combin::binomial;
use crate::config::{check, Budget};
use crate::exact_linalg::IntVector;
use crate::semigroup_approx::SemigroupInstance;
use crate::{Error, Result};

/// Search for non-negative `x` minimizing `‖W(b) − Σ x_j W(a_j)‖_∞`.
///
/// Basis coordinates marked free absorb any multiple of `Δ` (their basis
/// column is in the support with the best non-negative coefficient); the
/// others are left as they are.
struct Search<'a> {
    inst: &'a SemigroupInstance,
    cols: Vec<usize>,
    free: Vec<bool>,
    delta: BigInt,
    best: Option<BigInt>,
    best_x: IntVector,
    floor: Option<BigInt>,
    nodes: u64,
    limit: u64,
    done: bool,
}

impl Search<'_> {
    fn coord_error(&self, i: usize, c: &BigInt) -> BigInt {
        if c.is_negative() {
            return -c;
        }
        if !self.free[i] {
            return c.clone();
        }
        let r = c.mod_floor(&self.delta);
        let s = &self.delta - &r;
        r.min(s)
    }

    fn error(&self, c: &[BigInt]) -> BigInt {
        c.iter()
            .enumerate()
            .map(|(i, v)| self.coord_error(i, v))
            .max()
            .unwrap_or_default()
    }

    /// No descendant of `c` along column `w` can beat the incumbent.
    fn hopeless(&self, c: &[BigInt], decreasing: impl Fn(usize) -> bool) -> bool {
        let Some(best) = &self.best else { return false };
        c.iter()
            .enumerate()
            .any(|(i, v)| decreasing(i) && v.is_negative() && -v >= *best)
    }

    fn record(&mut self, c: &[BigInt], path: &[(usize, BigInt)]) {
        let e = self.error(c);
        if self.best.as_ref().map_or(false, |b| e >= *b) {
            return;
        }
        let mut x = vec![BigInt::zero(); self.inst.n()];
        for (j, t) in path {
            x[*j] += t;
        }
        for (i, &bj) in self.inst.basis().iter().enumerate() {
            if !self.free[i] || c[i].is_negative() {
                continue;
            }
            let (q, r) = c[i].div_mod_floor(&self.delta);
            x[bj] = if &r + &r <= self.delta { q } else { q + 1 };
        }
        self.best_x = x;
        if e.is_zero() || self.floor.as_ref().map_or(false, |f| e <= *f) {
            self.done = true;
        }
        self.best = Some(e);
    }

    fn dfs(&mut self, c: &mut IntVector, start: usize, left: usize, path: &mut Vec<(usize, BigInt)>) -> Result<()> {
        self.nodes += 1;
        check("node", self.nodes as u128, self.limit)?;
        self.record(c, path);
        if self.done || left == 0 {
            return Ok(());
        }
        for idx in start..self.cols.len() {
            let j = self.cols[idx];
            let w = self.inst.column_coords(j).clone();
            let has_pos = w.iter().any(|v| v.is_positive());
            // Without a positive entry, the error is Δ-periodic in t once every
            // negative entry has lifted its coordinate to ≥ 0.
            let t_max = if has_pos {
                None
            } else {
                let mut t0 = BigInt::zero();
                for (ci, wi) in c.iter().zip(&w) {
                    if wi.is_negative() && ci.is_negative() {
                        t0 = t0.max((-ci).div_ceil(&-wi));
                    }
                }
                Some(t0 + &self.delta)
            };
            let mut t = BigInt::zero();
            loop {
                if t_max.as_ref().map_or(false, |m| &t >= m) {
                    break;
                }
                t += 1;
                for (ci, wi) in c.iter_mut().zip(&w) {
                    *ci -= wi;
                }
                if self.hopeless(c, |i| w[i].is_positive()) {
                    break;
                }
                if self.hopeless(c, |_| true) {
                    continue;
                }
                path.push((j, t.clone()));
                self.dfs(c, idx + 1, left - 1, path)?;
                path.pop();
                if self.done {
                    break;
                }
            }
            for (ci, wi) in c.iter_mut().zip(&w) {
                *ci += &t * wi;
            }
            if self.done {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn check_k(inst: &SemigroupInstance, k: usize, basis_fixed: bool) -> Result<()> {
    let (m, n) = (inst.m(), inst.n());
    let min = if basis_fixed { m } else { 1 };
    if k < min || k > n {
        return Err(Error::BadK { k, min, max: n });
    }
    Ok(())
}

struct Outcome {
    error: BigRational,
    x: IntVector,
    nodes: u64,
    beaten: bool,
}

fn min_at(
    inst: &SemigroupInstance,
    b: &[BigInt],
    k: usize,
    basis_fixed: bool,
    floor: Option<&BigRational>,
    limit: u64,
) -> Result<Outcome> {
    let m = inst.m();
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.len(),
        });
    }
    let delta = inst.delta().clone();
    let cols: Vec<usize> = inst
        .non_basis()
        .into_iter()
        .filter(|&j| inst.column_coords(j).iter().any(|v| !v.is_zero()))
        .collect();
    let monotone = cols
        .iter()
        .all(|&j| inst.column_coords(j).iter().all(|v| !v.is_negative()));
    let w = inst.coords(b)?;
    // Basis subsets to leave free, the full basis first.
    let masks: Vec<u32> = if basis_fixed {
        vec![(1 << m) - 1]
    } else {
        let mut v: Vec<u32> = (0..1u32 << m).filter(|t| t.count_ones() as usize <= k).collect();
        v.sort_by_key(|t| std::cmp::Reverse(t.count_ones()));
        v
    };
    let mut search = Search {
        inst,
        cols,
        free: vec![false; m],
        delta: delta.clone(),
        best: None,
        best_x: Vec::new(),
        floor: floor.map(|f| (f * BigRational::from_integer(delta.clone())).floor().to_integer()),
        nodes: 0,
        limit,
        done: false,
    };
    for mask in masks {
        let left = (k - mask.count_ones() as usize).min(search.cols.len());
        if !monotone && left >= 2 {
            return Err(Error::NotSimplicial);
        }
        search.free = (0..m).map(|i| mask >> i & 1 == 1).collect();
        let mut c = w.clone();
        search.dfs(&mut c, 0, left, &mut Vec::new())?;
        if search.done {
            break;
        }
    }
    let num = search.best.clone().expect("root node is always recorded");
    let error = BigRational::new(num, delta);
    let beaten = floor.map_or(false, |f| error <= *f);
    Ok(Outcome {
        error,
        x: search.best_x,
        nodes: search.nodes,
        beaten,
    })
}

fn support(x: &[BigInt]) -> Vec<usize> {
    (0..x.len()).filter(|&i| !x[i].is_zero()).collect()
}

/// `min ‖Ax − b‖_{P(B)}` over non-negative integer `x`, for one target.
///
/// With `basis_fixed` the support constraint is `|supp(x) \ B| ≤ k − m` and
/// the basis columns are free; otherwise it is `|supp(x)| ≤ k`. The search
/// needs every non-basis `W(a_j) ≥ 0`, except that a single free non-basis
/// column is handled for any sign pattern.
pub fn semigroup_app_at(
    inst: &SemigroupInstance,
    b: &[BigInt],
    k: usize,
    basis_fixed: bool,
    budget: &Budget,
) -> Result<OracleReport> {
    check_k(inst, k, basis_fixed)?;
    let out = min_at(inst, b, k, basis_fixed, None, budget.nodes)?;
    Ok(OracleReport {
        value: out.error,
        witness_b: b.to_vec(),
        witness_support: support(&out.x),
        witness_x: out.x,
        stats: EnumerationStats {
            supports: 0,
            targets: 1,
            nodes: out.nodes,
        },
    })
}

/// Non-basis coefficient vectors with sum at most `cap`.
fn compositions(len: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(len, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, cap, &mut Vec::new(), &mut out);
    out
}

/// Worst case of [`semigroup_app_at`] over the targets
/// `S = {Σ_{j∉B} λ_j a_j : Σλ_j ≤ Δ}`.
///
/// Any target in the semigroup is an element of `S` plus a non-negative
/// combination of the basis, which free basis columns absorb at no cost, so
/// with `basis_fixed` this is exactly `app_{B,k}`. Without it, the value is
/// the worst case over `S` and therefore a lower bound on `app_k`.
pub fn semigroup_app(
    inst: &SemigroupInstance,
    k: usize,
    basis_fixed: bool,
    budget: &Budget,
) -> Result<OracleReport> {
    inst.require_simplicial()?;
    check_k(inst, k, basis_fixed)?;
    let nb = inst.non_basis();
    let cap: usize = inst
        .delta()
        .try_into()
        .map_err(|_| Error::BudgetExceeded {
            what: "target",
            count: u128::MAX,
            limit: budget.targets as u128,
        })?;
    check("target", binomial(nb.len() + cap, nb.len()), budget.targets)?;
    let mut targets: BTreeSet<IntVector> = BTreeSet::new();
    let a = inst.matrix();
    for lam in compositions(nb.len(), cap) {
        let mut v = vec![BigInt::zero(); inst.m()];
        for (&j, &l) in nb.iter().zip(&lam) {
            for (vi, ai) in v.iter_mut().zip(a.column(j)) {
                *vi += ai * l;
            }
        }
        targets.insert(v);
    }
    let mut nodes = 0u64;
    let mut best: Option<(IntVector, Outcome)> = None;
    for b in &targets {
        let floor = best.as_ref().map(|(_, o)| o.error.clone());
        let out = min_at(inst, b, k, basis_fixed, floor.as_ref(), budget.nodes.saturating_sub(nodes))?;
        nodes += out.nodes;
        if !out.beaten {
            best = Some((b.clone(), out));
        }
    }
    let (witness_b, out) = best.expect("S contains 0");
    Ok(OracleReport {
        value: out.error,
        witness_support: support(&out.x),
        witness_x: out.x,
        witness_b,
        stats: EnumerationStats {
            supports: 0,
            targets: targets.len() as u64,
            nodes,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::exact_linalg::IntMatrix;

    fn inst(rows: &[Vec<i64>]) -> SemigroupInstance {
        SemigroupInstance::with_leading_basis(IntMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hard_target_needs_all_columns() {
        let s = inst(&[vec![4, 9, 10]]);
        let r = semigroup_app_at(&s, &ints(&[23]), 2, false, &Budget::default()).unwrap();
        // |23 − b̄| ≥ 1 for every 2-sparse b̄, so the P(B)-error is 1/4.
        assert_eq!(r.value, rat(1, 4));
        let r3 = semigroup_app_at(&s, &ints(&[23]), 3, false, &Budget::default()).unwrap();
        assert_eq!(r3.value, int(0));
        assert_eq!(r3.witness_x, ints(&[1, 1, 1]));
    }

    #[test]
    fn worst_case_matches_scan() {
        let s = inst(&[vec![4, 9, 10]]);
        let r = semigroup_app(&s, 2, true, &Budget::default()).unwrap();
        // Brute force over semigroup targets below 200 with λ_1 free and one other column.
        let mut member = vec![false; 200];
        member[0] = true;
        for b in 1..200usize {
            member[b] = [4usize, 9, 10].iter().any(|&g| b >= g && member[b - g]);
        }
        let mut worst = 0i64;
        for b in (0..200i64).filter(|&b| member[b as usize]) {
            let mut best = i64::MAX;
            for (ai, cap) in [(9i64, 30i64), (10, 30)] {
                for t in 0..cap {
                    let rest = b - t * ai;
                    let e = if rest < 0 { -rest } else { (rest % 4).min(4 - rest % 4) };
                    best = best.min(e);
                }
            }
            worst = worst.max(best);
        }
        assert_eq!(r.value, rat(worst, 4));
        let again = semigroup_app_at(&s, &r.witness_b, 2, true, &Budget::default()).unwrap();
        assert_eq!(again.value, r.value);
    }

    #[test]
    fn full_support_is_exact() {
        let s = inst(&[vec![2, 0, 1, 3], vec![0, 2, 1, 1]]);
        assert_eq!(semigroup_app(&s, 4, true, &Budget::default()).unwrap().value, int(0));
    }

    #[test]
    fn unfixed_not_above_fixed() {
        let s = inst(&[vec![3, 0, 1, 2, 5], vec![0, 2, 1, 3, 1]]);
        for k in 2..=4 {
            let f = semigroup_app(&s, k, true, &Budget::default()).unwrap();
            let u = semigroup_app(&s, k, false, &Budget::default()).unwrap();
            assert!(u.value >= int(0));
            assert!(f.value <= rat(1, 2));
            let at = semigroup_app_at(&s, &f.witness_b, k, true, &Budget::default()).unwrap();
            assert_eq!(at.value, f.value);
        }
    }

    #[test]
    fn opposite_cone_column() {
        // a_3 = (4, −4), a_4 = (6, −8): one free non-basis column.
        let s = inst(&[vec![1, 0, 4, 6], vec![0, 1, -4, -8]]);
        assert!(!s.is_simplicial());
        let r = semigroup_app_at(&s, &ints(&[10, -12]), 3, true, &Budget::default()).unwrap();
        assert_eq!(r.value, int(2));
        assert_eq!(
            semigroup_app(&s, 3, true, &Budget::default()),
            Err(Error::NotSimplicial)
        );
        assert_eq!(
            semigroup_app_at(&s, &ints(&[10, -12]), 4, true, &Budget::default()),
            Err(Error::NotSimplicial)
        );
    }
}

//! Generators for the named instance families and for seeded random
//! instances, each bundled with the relation its approximation value is
//! predicted to satisfy.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{pow2, serde_opt_int_vec, serde_rational};
use crate::combin::binomial;
use crate::config::{check, Budget};
use crate::exact_linalg::{has_full_row_rank, IntMatrix, IntVector};
use crate::lattice_approx::{delta, theorem_bound, NormTag};
use crate::oracle::periodicity_modulus;
use crate::semigroup_approx::{k2_constant, sylvester_phi, sylvester_t, SemigroupInstance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Example1,
    Example2,
    Example3BadBasis,
    Prop13,
    Prop14,
    Prop15,
    RandomLattice,
    RandomSimplicial,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Example1 => "example1",
            Family::Example2 => "example2",
            Family::Example3BadBasis => "example3_bad_basis",
            Family::Prop13 => "prop13",
            Family::Prop14 => "prop14",
            Family::Prop15 => "prop15",
            Family::RandomLattice => "random_lattice",
            Family::RandomSimplicial => "random_simplicial",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(&self, value: &BigRational, predicted: &BigRational) -> bool {
        match self {
            Relation::Le => value <= predicted,
            Relation::Ge => value >= predicted,
            Relation::Eq => value == predicted,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// `app_k  <relation>  value`, measured in `norm`. When `target` is set the
/// relation is already witnessed by that single target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub k: usize,
    pub relation: Relation,
    #[serde(with = "serde_rational")]
    pub value: BigRational,
    pub norm: NormTag,
    #[serde(default, with = "serde_opt_int_vec", skip_serializing_if = "Option::is_none")]
    pub target: Option<IntVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    /// Generator parameters as decimal strings (lists comma separated).
    pub parameters: BTreeMap<String, String>,
    pub matrix: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<usize>>,
    #[serde(default, with = "serde_opt_int_vec", skip_serializing_if = "Option::is_none")]
    pub target: Option<IntVector>,
    #[serde(default, with = "serde_opt_int_vec", skip_serializing_if = "Option::is_none")]
    pub witness: Option<IntVector>,
    #[serde(default)]
    pub predictions: Vec<Prediction>,
}

impl InstanceSpec {
    fn new(family: Family, matrix: IntMatrix) -> Self {
        InstanceSpec {
            family,
            parameters: BTreeMap::new(),
            matrix,
            basis: None,
            target: None,
            witness: None,
            predictions: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn predict(&mut self, k: usize, relation: Relation, value: BigRational, norm: NormTag) {
        self.predictions.push(Prediction {
            k,
            relation,
            value,
            norm,
            target: None,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance specs always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: InstanceSpec = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(b) = &spec.basis {
            if b.len() != spec.matrix.rows() || b.iter().any(|&j| j >= spec.matrix.cols()) {
                return Err(Error::BadInput("basis indices out of range".into()));
            }
        }
        let lengths = [(&spec.target, spec.matrix.rows()), (&spec.witness, spec.matrix.cols())];
        for (v, want) in lengths {
            if let Some(v) = v {
                if v.len() != want {
                    return Err(Error::DimensionMismatch {
                        expected: want,
                        found: v.len(),
                    });
                }
            }
        }
        Ok(spec)
    }

    /// The instance with its recorded basis, or the leading columns.
    pub fn semigroup(&self) -> Result<SemigroupInstance> {
        match &self.basis {
            Some(b) => SemigroupInstance::new(self.matrix.clone(), b.clone()),
            None => SemigroupInstance::with_leading_basis(self.matrix.clone()),
        }
    }

    /// The generators of a one-row instance.
    pub fn generators(&self) -> Result<Vec<BigInt>> {
        if self.matrix.rows() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.matrix.rows(),
            });
        }
        Ok(self.matrix.row(0).to_vec())
    }
}

fn unit(m: usize, i: usize, scale: BigInt) -> IntVector {
    let mut v = vec![BigInt::zero(); m];
    v[i] = scale;
    v
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Columns `2e_i, 3e_i` for `i = 1..m`: `δ = 2^m` and `app_{2m−1} = 1`, with
/// the all-ones vector as the hard target.
pub fn gen_example1(m: usize) -> Result<InstanceSpec> {
    if m == 0 {
        return Err(Error::BadInput("m must be at least 1".into()));
    }
    let mut cols = Vec::with_capacity(2 * m);
    for i in 0..m {
        cols.push(unit(m, i, 2.into()));
        cols.push(unit(m, i, 3.into()));
    }
    let mut spec = InstanceSpec::new(Family::Example1, IntMatrix::from_columns(&cols)?)
        .param("m", m)
        .param("delta", pow2(m as u32));
    spec.target = Some(vec![BigInt::one(); m]);
    spec.predict(2 * m - 1, Relation::Eq, BigRational::one(), NormTag::Linf);
    Ok(spec)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(q_1e_1, …, q_ne_1, e_2, …, e_m)` with `q_i = ∏_{j≠i} p_j`, predicted
/// `app_k = ⌊½∏_{i=1}^{m+n−1−k} p_i⌋` for every `m ≤ k ≤ m+n−1`.
///
/// Each prediction carries the hard target `⌊½∏⌋e_1 + N(e_2+…+e_m)` with
/// `N` one more than the periodicity modulus.
pub fn gen_example2(primes: &[u64], m: usize, budget: &Budget) -> Result<InstanceSpec> {
    if primes.len() < 2 {
        return Err(Error::BadInput("at least two primes are needed".into()));
    }
    if m == 0 {
        return Err(Error::BadInput("m must be at least 1".into()));
    }
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p.into()));
    }
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadInput("primes must be strictly increasing".into()));
    }
    let n = primes.len();
    let all: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let mut cols: Vec<IntVector> = primes
        .iter()
        .map(|&p| unit(m, 0, &all / BigInt::from(p)))
        .collect();
    for i in 1..m {
        cols.push(unit(m, i, BigInt::one()));
    }
    let a = IntMatrix::from_columns(&cols)?;
    let mut spec = InstanceSpec::new(Family::Example2, a)
        .param("m", m)
        .param("primes", list(primes));
    let total = m + n - 1;
    for k in m..=total {
        let prod: BigInt = primes[..total - k].iter().map(|&p| BigInt::from(p)).product();
        let value = prod.div_floor(&BigInt::from(2));
        let mut target = vec![value.clone()];
        if m > 1 {
            let big = periodicity_modulus(&spec.matrix, k, budget)? + 1;
            target.extend(std::iter::repeat(big).take(m - 1));
        }
        spec.predictions.push(Prediction {
            k,
            relation: Relation::Eq,
            value: BigRational::from_integer(value),
            norm: NormTag::Linf,
            target: Some(target),
        });
    }
    Ok(spec)
}

/// `a_1 = 2^k`, `a_i = 2^{k+1} + 2^{i−2}` for `2 ≤ i ≤ k+1`, and a tail
/// `a_j = 2^{k+1}(k+1) + (j−k−1)·tail_scale` above the hard target
/// `b = Σ_{i≤k+1} a_i = 2^{k+1}(k+1) − 1`, whose only representation uses
/// all of `a_1, …, a_{k+1}`. Predicted `app_k ≥ a_1/2^k = 1`.
pub fn gen_prop13(k: usize, n: usize, tail_scale: u64) -> Result<InstanceSpec> {
    if k < 1 || k + 1 > n {
        return Err(Error::BadK {
            k,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    if tail_scale == 0 && n > k + 1 {
        return Err(Error::BadInput("tail_scale must be positive".into()));
    }
    let top = pow2(k as u32 + 1);
    let base = &top * BigInt::from(k + 1);
    let mut a = vec![pow2(k as u32)];
    for i in 2..=k + 1 {
        a.push(&top + pow2(i as u32 - 2));
    }
    for j in k + 2..=n {
        a.push(&base + BigInt::from(j - k - 1) * BigInt::from(tail_scale));
    }
    let b = &base - 1;
    let mut w = vec![BigInt::one(); k + 1];
    w.resize(n, BigInt::zero());
    let mut spec = InstanceSpec::new(Family::Prop13, IntMatrix::new(1, n, a)?)
        .param("k", k)
        .param("n", n)
        .param("tail_scale", tail_scale);
    spec.basis = Some(vec![0]);
    spec.target = Some(vec![b]);
    spec.witness = Some(w);
    spec.predict(k, Relation::Ge, BigRational::one(), NormTag::Linf);
    Ok(spec)
}

/// Sylvester-sequence instance for `k = 2`: `a_1 = 1`, `a_i = τz_i + r_i`
/// with `r_n = 1/(2φ(n−2)+1)`, `r_i = r_n/t_{n−i}`, `z_i = ∏_{j≠n−i}(t_j+1)`,
/// scaled to integers. Predicted `app_2 ≥ φ(n−2)/(2φ(n−2)+1)·a_1` at the
/// target `a_2 + … + a_n`.
///
/// `τ` starts at `tau` (default `2^n`) and doubles until both largeness
/// conditions hold exactly: `⌊Σ_{j≥2} a_j/a_i⌋ ≤ t_{n−i}` for every `i`,
/// and every `λ_ia_i + λ_ja_j` with `λ ≤ t_{n−·} + 1` misses the target by
/// more than the predicted error. `n = 3` is the `k = 2` instance of
/// [`gen_prop13`].
pub fn gen_prop14(n: usize, tau: Option<u64>, budget: &Budget) -> Result<InstanceSpec> {
    const DOUBLINGS: u32 = 60;
    if n < 3 {
        return Err(Error::BadInput("n must be at least 3".into()));
    }
    if n == 3 {
        let mut spec = gen_prop13(2, 3, 1)?;
        spec.family = Family::Prop14;
        spec.parameters = BTreeMap::from([("n".to_string(), "3".to_string())]);
        spec.predictions[0].k = 2;
        spec.predictions[0].value = k2_constant(3) * BigRational::from_integer(spec.matrix[(0, 0)].clone());
        return Ok(spec);
    }
    let t: Vec<BigInt> = (0..n).map(sylvester_t).collect();
    let phi = sylvester_phi(n - 2);
    let two = BigRational::from_integer(2.into());
    let r_n = BigRational::one() / (&two * &phi + BigRational::one());
    // index i − 2 holds r_i, z_i for i = 2..n
    let r: Vec<BigRational> = (2..=n)
        .map(|i| &r_n / BigRational::from_integer(t[n - i].clone()))
        .collect();
    let z: Vec<BigInt> = (2..=n)
        .map(|i| {
            (0..=n - 2)
                .filter(|&j| j != n - i)
                .map(|j| &t[j] + 1u32)
                .product()
        })
        .collect();
    let scale = r.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let bound = k2_constant(n) * BigRational::from_integer(scale.clone());
    let caps: Vec<BigInt> = (2..=n).map(|i| t[n - i].clone()).collect();
    let pairs: u128 = caps
        .iter()
        .map(|c| u128::try_from(c + 2u32).unwrap_or(u128::MAX))
        .fold(0u128, |acc, c| acc.saturating_add(c))
        .saturating_pow(2);
    check("node", pairs, budget.nodes)?;

    let mut tau = BigInt::from(tau.unwrap_or(1u64 << n.min(62)));
    for _ in 0..=DOUBLINGS {
        let a: Vec<BigInt> = z
            .iter()
            .zip(&r)
            .map(|(zi, ri)| &tau * zi * &scale + (ri * BigRational::from_integer(scale.clone())).to_integer())
            .collect();
        let b: BigInt = a.iter().sum();
        let caps_hold = a.iter().zip(&caps).all(|(ai, c)| b.div_floor(ai) <= *c);
        let pairs_hold = caps_hold && pairwise_far(&a, &b, &caps, &bound);
        if pairs_hold {
            let mut all = vec![scale.clone()];
            all.extend(a);
            let mut spec = InstanceSpec::new(Family::Prop14, IntMatrix::new(1, n, all)?)
                .param("n", n)
                .param("tau", &tau);
            spec.basis = Some(vec![0]);
            spec.target = Some(vec![b]);
            let mut w = vec![BigInt::one(); n];
            w[0] = BigInt::zero();
            spec.witness = Some(w);
            spec.predict(2, Relation::Ge, bound, NormTag::Linf);
            return Ok(spec);
        }
        tau *= 2;
    }
    Err(Error::TauSearchFailed(DOUBLINGS))
}

fn pairwise_far(a: &[BigInt], b: &BigInt, caps: &[BigInt], bound: &BigRational) -> bool {
    let far = |v: BigInt| BigRational::from_integer(v.abs()) > *bound;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let mut li = BigInt::zero();
            while li <= &caps[i] + 1u32 {
                let rest = b - &li * &a[i];
                let mut lj = BigInt::zero();
                while lj <= &caps[j] + 1u32 {
                    if !far(&rest - &lj * &a[j]) {
                        return false;
                    }
                    lj += 1;
                }
                li += 1;
            }
        }
    }
    true
}

/// `a_1 = (n−1)e_1`, `a_2 = (n−1)e_2`, `a_i = (n−1)z_i + (1, q)` with
/// `z_i = (2^{n−2}+1)(1,1) + 2^{i−2}(1,−1)` and `q = ⌊√(n−1)⌋`. Predicted
/// `app_k ≥ q/(n−1)` in `‖·‖_{P(B)}` for `2 ≤ k ≤ n−1`, at the target `Σa_i`.
pub fn gen_prop15(n: usize) -> Result<InstanceSpec> {
    if n < 3 {
        return Err(Error::BadInput("n must be at least 3".into()));
    }
    let s = BigInt::from(n - 1);
    let q = BigInt::from((n as u64 - 1).sqrt());
    let mut cols = vec![vec![s.clone(), BigInt::zero()], vec![BigInt::zero(), s.clone()]];
    let c = pow2(n as u32 - 2) + 1;
    for i in 3..=n {
        let e = pow2(i as u32 - 2);
        cols.push(vec![&s * (&c + &e) + 1, &s * (&c - &e) + &q]);
    }
    let a = IntMatrix::from_columns(&cols)?;
    let target: IntVector = (0..2).map(|r| a.row(r).iter().sum()).collect();
    let mut spec = InstanceSpec::new(Family::Prop15, a).param("n", n).param("q", &q);
    spec.basis = Some(vec![0, 1]);
    spec.target = Some(target);
    spec.witness = Some(vec![BigInt::one(); n]);
    let value = BigRational::new(q, s);
    for k in 2..n {
        spec.predict(k, Relation::Ge, value.clone(), NormTag::Pnorm { basis: vec![0, 1] });
    }
    Ok(spec)
}

/// The `2×4` instance with `a_3, a_4` outside `pos{a_1, a_2}` and target
/// `a_3 + a_4`; predicted `app_{B,3} ≥ 2^{l−2}`.
pub fn gen_example3(l: u32) -> Result<InstanceSpec> {
    if l < 3 {
        return Err(Error::BadL(l));
    }
    let h = pow2(l - 1);
    let q = pow2(l - 2);
    let full = pow2(l);
    let a = IntMatrix::new(
        2,
        4,
        vec![
            BigInt::one(),
            BigInt::zero(),
            h.clone(),
            &h + &q,
            BigInt::zero(),
            BigInt::one(),
            -&h,
            -&full,
        ],
    )?;
    let mut spec = InstanceSpec::new(Family::Example3BadBasis, a).param("l", l);
    spec.basis = Some(vec![0, 1]);
    spec.target = Some(vec![&full + &q, -&full - &h]);
    spec.witness = Some(vec![BigInt::zero(), BigInt::zero(), BigInt::one(), BigInt::one()]);
    spec.predict(
        3,
        Relation::Ge,
        BigRational::from_integer(q),
        NormTag::Pnorm { basis: vec![0, 1] },
    );
    Ok(spec)
}

const ATTEMPTS: usize = 1000;

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, bound: i64) -> IntMatrix {
    let data = (0..m * n)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(m, n, data).expect("sizes match")
}

/// Seeded random instance.
///
/// `RandomLattice`: entries uniform in `[−bound, bound]`, resampled until the
/// matrix has full row rank; predictions `app_k ≤ δ(A)/2^{k−m+1}`.
/// `RandomSimplicial`: an invertible `B` followed by columns `B·w` with
/// `w ≥ 0` rational (sampled as integer columns inside the cone of `B`);
/// predictions `app_{B,k} ≤ 1/2`.
pub fn gen_random(
    family: Family,
    m: usize,
    n: usize,
    entry_bound: u32,
    seed: u64,
    budget: &Budget,
) -> Result<InstanceSpec> {
    if m == 0 || n < m {
        return Err(Error::BadInput("need 1 ≤ m ≤ n".into()));
    }
    if entry_bound == 0 {
        return Err(Error::BadInput("entry bound must be positive".into()));
    }
    check("subset", binomial(n, m), budget.subsets)?;
    let bound = entry_bound as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = |family, a| {
        InstanceSpec::new(family, a)
            .param("m", m)
            .param("n", n)
            .param("entry_bound", entry_bound)
            .param("seed", seed)
    };
    match family {
        Family::RandomLattice => {
            for _ in 0..ATTEMPTS {
                let a = random_matrix(&mut rng, m, n, bound);
                if !has_full_row_rank(&a) {
                    continue;
                }
                let (d, _) = delta(&a, budget)?;
                let mut s = spec(family, a);
                for k in m..=n {
                    s.predict(k, Relation::Le, theorem_bound(&d, m, k), NormTag::Linf);
                }
                return Ok(s);
            }
            Err(Error::RankRetryExhausted(ATTEMPTS))
        }
        Family::RandomSimplicial => {
            'outer: for _ in 0..ATTEMPTS {
                let b = random_matrix(&mut rng, m, m, bound);
                let Ok(inst) = SemigroupInstance::with_leading_basis(b.clone()) else {
                    continue;
                };
                let mut cols = b.columns();
                while cols.len() < n {
                    let mut placed = false;
                    for _ in 0..ATTEMPTS {
                        let v: IntVector = (0..m)
                            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                            .collect();
                        let w = inst.coords(&v)?;
                        if w.iter().all(|x| !x.is_negative()) && w.iter().any(|x| x.is_positive()) {
                            cols.push(v);
                            placed = true;
                            break;
                        }
                    }
                    if !placed {
                        continue 'outer;
                    }
                }
                let a = IntMatrix::from_columns(&cols)?;
                let mut s = spec(family, a);
                s.basis = Some((0..m).collect());
                for k in m..=n {
                    s.predict(
                        k,
                        Relation::Le,
                        BigRational::new(1.into(), 2.into()),
                        NormTag::Pnorm {
                            basis: (0..m).collect(),
                        },
                    );
                }
                return Ok(s);
            }
            Err(Error::RankRetryExhausted(ATTEMPTS))
        }
        other => Err(Error::BadInput(format!("{other} is not a random family"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::oracle::{semigroup_app_at, verify_unique_representation};

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn example1_shape() {
        let s = gen_example1(1).unwrap();
        assert_eq!(s.matrix, IntMatrix::from_rows(&[vec![2, 3]]).unwrap());
        let s = gen_example1(2).unwrap();
        assert_eq!(delta(&s.matrix, &Budget::default()).unwrap().0, BigInt::from(4));
        assert_eq!(s.predictions[0].k, 3);
        assert!(gen_example1(0).is_err());
    }

    #[test]
    fn example2_values() {
        let s = gen_example2(&[2, 3, 5], 1, &Budget::default()).unwrap();
        assert_eq!(s.matrix, IntMatrix::from_rows(&[vec![15, 10, 6]]).unwrap());
        let v: Vec<_> = s.predictions.iter().map(|p| p.value.clone()).collect();
        assert_eq!(v, vec![int(3), int(1), int(0)]);
        let s = gen_example2(&[2, 3, 5], 2, &Budget::default()).unwrap();
        assert_eq!(s.predictions.last().unwrap().value, int(0));
        // m + n − 1 − k = 1 at k = 3
        assert_eq!(s.predictions[1].k, 3);
        assert_eq!(s.predictions[1].value, int(1));
        assert_eq!(
            gen_example2(&[2, 4, 5], 1, &Budget::default()),
            Err(Error::NotPrime(4.into()))
        );
        assert!(gen_example2(&[3, 2], 1, &Budget::default()).is_err());
    }

    #[test]
    fn prop13_shape() {
        let s = gen_prop13(1, 2, 1).unwrap();
        assert_eq!(s.generators().unwrap(), ints(&[2, 5]));
        assert_eq!(s.target, Some(ints(&[7])));
        let s = gen_prop13(2, 3, 1).unwrap();
        assert_eq!(s.generators().unwrap(), ints(&[4, 9, 10]));
        assert_eq!(s.target, Some(ints(&[23])));
        let s = gen_prop13(3, 5, 7).unwrap();
        assert_eq!(&s.generators().unwrap()[..4], &ints(&[8, 17, 18, 20])[..]);
        assert_eq!(s.target, Some(ints(&[63])));
        let a = s.generators().unwrap();
        assert!(verify_unique_representation(&a, &BigInt::from(63), 4, &Budget::default()).unwrap());
        assert!(matches!(gen_prop13(3, 3, 1), Err(Error::BadK { .. })));
    }

    #[test]
    fn prop14_conditions() {
        for n in 3..=5 {
            let s = gen_prop14(n, None, &Budget::default()).unwrap();
            let a = s.generators().unwrap();
            assert!(a.windows(2).all(|w| w[0] < w[1]));
            let pred = &s.predictions[0];
            assert_eq!(pred.value, k2_constant(n) * BigRational::from_integer(a[0].clone()));
        }
    }

    #[test]
    fn prop15_shape() {
        let s = gen_prop15(5).unwrap();
        assert_eq!(s.parameters["q"], "2");
        assert_eq!(s.predictions[0].value, rat(1, 2));
        assert!(s.semigroup().unwrap().is_simplicial());
        assert_eq!(gen_prop15(10).unwrap().predictions[0].value, rat(1, 3));
        assert_eq!(gen_prop15(3).unwrap().predictions[0].value, rat(1, 2));
    }

    #[test]
    fn example3_shape() {
        let s = gen_example3(3).unwrap();
        assert_eq!(s.target, Some(ints(&[10, -12])));
        let inst = s.semigroup().unwrap();
        assert!(!inst.is_simplicial());
        let r = semigroup_app_at(&inst, s.target.as_ref().unwrap(), 3, true, &Budget::default()).unwrap();
        assert!(r.value >= int(2));
        assert_eq!(gen_example3(2), Err(Error::BadL(2)));
    }

    #[test]
    fn random_is_deterministic() {
        let b = Budget::default();
        let x = gen_random(Family::RandomSimplicial, 2, 5, 5, 7, &b).unwrap();
        assert!(x.semigroup().unwrap().is_simplicial());
        assert_eq!(x, gen_random(Family::RandomSimplicial, 2, 5, 5, 7, &b).unwrap());
        let y = gen_random(Family::RandomLattice, 3, 6, 9, 1, &b).unwrap();
        assert!(has_full_row_rank(&y.matrix));
        assert!(gen_random(Family::Prop13, 1, 2, 3, 0, &b).is_err());
    }

    #[test]
    fn json_round_trip() {
        for s in [
            gen_example2(&[2, 3, 5], 2, &Budget::default()).unwrap(),
            gen_example3(4).unwrap(),
            gen_prop14(4, None, &Budget::default()).unwrap(),
        ] {
            let back = InstanceSpec::from_json(&s.to_json()).unwrap();
            assert_eq!(back, s);
        }
    }
}

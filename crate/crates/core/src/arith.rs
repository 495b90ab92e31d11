//! Small exact-arithmetic helpers: rounding, rational parsing/formatting, and
//! sums of m-th roots of rationals compared exactly against rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Nearest integer, ties rounded toward +∞.
pub fn round_half_up(x: &BigRational) -> BigInt {
    (x + rat(1, 2)).floor().to_integer()
}

/// Distance from `x` to the nearest integer.
pub fn dist_to_integer(x: &BigRational) -> BigRational {
    (x - BigRational::from_integer(round_half_up(x))).abs()
}

/// Distance from `x` to the nearest non-negative integer.
pub fn dist_to_nonneg_integer(x: &BigRational) -> BigRational {
    if x.is_negative() {
        -x.clone()
    } else {
        dist_to_integer(x)
    }
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.abs()))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

pub(crate) mod serde_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_int_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.trim().parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub(crate) mod serde_opt_int_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        let raw = Option::<Vec<String>>::deserialize(d)?;
        raw.map(|v| {
            v.iter()
                .map(|s| s.trim().parse().map_err(serde::de::Error::custom))
                .collect()
        })
        .transpose()
    }
}

/// Exact m-th root of a non-negative rational when it is rational.
pub fn exact_root(q: &BigRational, m: u32) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().nth_root(m);
    let d = q.denom().nth_root(m);
    if n.pow(m) == *q.numer() && d.pow(m) == *q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// A non-negative real of the form `Σ c_i · q_i^{1/m}` with rational
/// `c_i, q_i ≥ 0`.
///
/// Comparison with a rational is exact: terms whose radicand is a perfect
/// m-th power are folded into a rational constant, and the remaining terms
/// (if any) make the sum irrational, so interval refinement terminates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSum {
    root: u32,
    terms: Vec<(BigRational, BigRational)>,
}

impl RootSum {
    pub fn new(root: u32) -> Self {
        assert!(root >= 1);
        RootSum {
            root,
            terms: Vec::new(),
        }
    }

    pub fn rational(value: BigRational) -> Self {
        let mut s = RootSum::new(1);
        s.push(value, BigRational::one());
        s
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// Adds `coef · radicand^{1/m}`.
    pub fn push(&mut self, coef: BigRational, radicand: BigRational) {
        assert!(!coef.is_negative() && !radicand.is_negative());
        if !coef.is_zero() && !radicand.is_zero() {
            self.terms.push((coef, radicand));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: &BigRational) -> RootSum {
        assert!(!factor.is_negative());
        let mut out = RootSum::new(self.root);
        for (c, q) in &self.terms {
            out.push(c * factor, q.clone());
        }
        out
    }

    fn split(&self) -> (BigRational, Vec<(BigRational, BigRational)>) {
        let mut exact = BigRational::zero();
        let mut rest = Vec::new();
        for (c, q) in &self.terms {
            match exact_root(q, self.root) {
                Some(r) => exact += c * r,
                None => rest.push((c.clone(), q.clone())),
            }
        }
        (exact, rest)
    }

    /// The value itself when it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        let (exact, rest) = self.split();
        rest.is_empty().then_some(exact)
    }

    /// Rational interval `[lo, hi]` containing the value, of width about `2^-bits`.
    pub fn bracket(&self, bits: u32) -> (BigRational, BigRational) {
        let (exact, rest) = self.split();
        let mut lo = exact.clone();
        let mut hi = exact;
        let m = self.root;
        for (c, q) in rest {
            let (n, d) = (q.numer(), q.denom());
            let scale = pow2(bits);
            let big = n * d.pow(m - 1) * scale.pow(m);
            let r = big.nth_root(m);
            let den = d * &scale;
            lo += &c * BigRational::new(r.clone(), den.clone());
            hi += &c * BigRational::new(r + 1, den);
        }
        (lo, hi)
    }

    /// Exact ordering of the rational `e` relative to this value.
    pub fn cmp_rational(&self, e: &BigRational) -> Ordering {
        if let Some(v) = self.as_rational() {
            return e.cmp(&v);
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.bracket(bits);
            if *e < lo {
                return Ordering::Less;
            }
            if *e > hi {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }

    /// `e ≤ self`, decided exactly.
    pub fn ge_rational(&self, e: &BigRational) -> bool {
        self.cmp_rational(e) != Ordering::Greater
    }
}

impl fmt::Display for RootSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_rational() {
            return write!(f, "{v}");
        }
        let (exact, rest) = self.split();
        let mut first = true;
        if !exact.is_zero() {
            write!(f, "{exact}")?;
            first = false;
        }
        for (c, q) in rest {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "({q})^(1/{})", self.root)?;
            } else {
                write!(f, "{c}*({q})^(1/{})", self.root)?;
            }
        }
        Ok(())
    }
}

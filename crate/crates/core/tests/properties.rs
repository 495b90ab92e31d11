use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use sparseapprox::arith::RootSum;
use sparseapprox::exact_linalg::{determinant, hnf, pnorm, IntMatrix};
use sparseapprox::lattice_approx::{approximate_lattice, hnf_round};
use sparseapprox::oracle::{lattice_objective, periodicity_modulus};
use sparseapprox::semigroup_approx::{approximate_semigroup, SemigroupInstance};
use sparseapprox::Budget;

fn cofactor(m: &[Vec<i64>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                .collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] as i128 * cofactor(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn maximal_minor_gcd(a: &[Vec<i64>]) -> i128 {
    let (m, n) = (a.len(), a[0].len());
    let mut g = 0;
    let mut cols: Vec<usize> = (0..m).collect();
    loop {
        let sub: Vec<Vec<i64>> = a.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = gcd(g, cofactor(&sub));
        let Some(i) = (0..m).rev().find(|&i| cols[i] < n - m + i) else {
            return g;
        };
        cols[i] += 1;
        for j in i + 1..m {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

fn matrix(m: usize, n: usize, e: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-e..=e, n), m)
}

fn square() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|k| matrix(k, k, 12))
}

fn wide() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(|m| (m..=5).prop_flat_map(move |n| matrix(m, n, 9)))
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn determinant_matches_cofactor_expansion(rows in square()) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(determinant(&m).unwrap(), BigInt::from(cofactor(&rows)));
    }

    #[test]
    fn hnf_shape_and_determinant(rows in wide()) {
        let g = maximal_minor_gcd(&rows);
        prop_assume!(g != 0);
        let d = IntMatrix::from_rows(&rows).unwrap();
        let r = hnf(&d).unwrap();
        let m = rows.len();
        for i in 0..m {
            prop_assert!(r.h[(i, i)].is_positive());
            for j in i + 1..m {
                prop_assert!(r.h[(i, j)].is_zero());
            }
            for j in 0..i {
                prop_assert!(!r.h[(i, j)].is_negative() && r.h[(i, j)] < r.h[(i, i)]);
            }
        }
        prop_assert_eq!(&r.det_lambda, &BigInt::from(g));
        prop_assert_eq!(determinant(&r.u).unwrap().abs(), BigInt::from(1));
        let du = d.mul(&r.u).unwrap();
        for i in 0..m {
            for j in 0..d.cols() {
                let want = if j < m { r.h[(i, j)].clone() } else { BigInt::zero() };
                prop_assert_eq!(&du[(i, j)], &want);
            }
        }
    }

    #[test]
    fn rounding_stays_within_half_diagonal(rows in wide(), t in prop::collection::vec((-50i64..50, 1i64..5), 3)) {
        prop_assume!(maximal_minor_gcd(&rows) != 0);
        let d = IntMatrix::from_rows(&rows).unwrap();
        let target: Vec<BigRational> = t[..rows.len()].iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect();
        let r = hnf_round(&d, &target).unwrap();
        for (res, h) in r.residual.iter().zip(&r.diagonal) {
            prop_assert!(res.abs() * BigRational::from_integer(2.into()) <= BigRational::from_integer(h.clone()));
        }
    }

    #[test]
    fn pnorm_is_a_norm(
        b in matrix(2, 2, 6),
        v in prop::collection::vec(-30i64..30, 2),
        w in prop::collection::vec(-30i64..30, 2),
        s in -5i64..5,
    ) {
        prop_assume!(cofactor(&b) != 0);
        let bm = IntMatrix::from_rows(&b).unwrap();
        let q = |x: &[i64]| -> Vec<BigRational> { x.iter().map(|&y| BigRational::from_integer(y.into())).collect() };
        let nv = pnorm(&bm, &q(&v)).unwrap();
        let nw = pnorm(&bm, &q(&w)).unwrap();
        let sum: Vec<i64> = v.iter().zip(&w).map(|(a, c)| a + c).collect();
        prop_assert!(pnorm(&bm, &q(&sum)).unwrap() <= &nv + &nw);
        let scaled: Vec<i64> = v.iter().map(|a| a * s).collect();
        prop_assert_eq!(pnorm(&bm, &q(&scaled)).unwrap(), &nv * BigRational::from_integer(s.abs().into()));
        prop_assert_eq!(nv.is_zero(), v.iter().all(|&a| a == 0));
    }

    #[test]
    fn lattice_objective_is_periodic(
        a in prop::collection::vec(1i64..12, 3),
        b in -40i64..40,
        k in 1usize..=2,
    ) {
        let am = IntMatrix::from_rows(&[a]).unwrap();
        let budget = Budget::default();
        let period = periodicity_modulus(&am, k, &budget).unwrap();
        let (v, _) = lattice_objective(&am, &[BigInt::from(b)], k, &budget).unwrap();
        let (w, _) = lattice_objective(&am, &[BigInt::from(b) + &period], k, &budget).unwrap();
        prop_assert_eq!(v, w);
    }

    #[test]
    fn lattice_solutions_certify_themselves(rows in wide(), y in prop::collection::vec(-9i64..9, 5), k in 1usize..=5) {
        prop_assume!(maximal_minor_gcd(&rows) != 0);
        let (m, n) = (rows.len(), rows[0].len());
        prop_assume!(k >= m && k <= n);
        let a = IntMatrix::from_rows(&rows).unwrap();
        let b = a.mul_vec(&ints(&y[..n])).unwrap();
        let s = approximate_lattice(&a, &b, k, &Budget::default()).unwrap();
        prop_assert!(s.verify(&a, &b).unwrap());
        prop_assert!(s.support.len() <= k);
        let bound = s.bound.clone().unwrap();
        prop_assert!(bound.ge_rational(&s.error));
    }

    #[test]
    fn semigroup_solutions_are_nonnegative_and_bounded(
        mut a in prop::collection::vec(1i64..40, 2..6),
        lam in prop::collection::vec(0i64..4, 6),
        k in 1usize..=6,
    ) {
        a.sort_unstable();
        let n = a.len();
        prop_assume!(k <= n);
        let inst = SemigroupInstance::with_leading_basis(IntMatrix::from_rows(&[a.clone()]).unwrap()).unwrap();
        let lam = ints(&lam[..n]);
        let b = inst.matrix().mul_vec(&lam).unwrap();
        let s = approximate_semigroup(&inst, &b, Some(&lam), k, &Budget::default()).unwrap();
        prop_assert!(s.is_nonnegative());
        prop_assert!(s.verify(inst.matrix(), &b).unwrap());
        prop_assert!(s.error <= BigRational::new(1.into(), 2.into()));
        prop_assert!(s.support.iter().filter(|&&j| j != 0).count() < k.max(1));
    }

    #[test]
    fn root_sum_compares_exactly(c in 1i64..50, q in 2i64..200, e in 0i64..2000, d in 1i64..20) {
        let mut s = RootSum::new(2);
        s.push(BigRational::from_integer(c.into()), BigRational::from_integer(q.into()));
        let e = BigRational::new(e.into(), d.into());
        let lhs = &e * &e;
        let rhs = BigRational::from_integer((c * c * q).into());
        prop_assert_eq!(s.cmp_rational(&e), lhs.cmp(&rhs));
        prop_assert_eq!(s.cmp_rational(&e) == Ordering::Equal, lhs == rhs);
    }
}

//! Column-style Hermite normal form with unimodular transform.
//!
//! For a full-row-rank `D ∈ Z^{m×l}` we compute a unimodular `U ∈ Z^{l×l}`
//! with `D·U = [H | 0]`, where `H` is lower triangular, has a strictly
//! positive diagonal and satisfies `0 ≤ H[i][j] < H[i][i]` for `j < i`.
//! That canonical form is unique for the lattice `D·Z^l`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, IntVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    /// `m×m` lower-triangular basis of the lattice.
    pub h: IntMatrix,
    /// `l×l` unimodular transform with `D·U = [H | 0]`.
    pub u: IntMatrix,
    /// `det Λ = ∏ H[i][i]`.
    pub det_lambda: BigInt,
}

impl HnfResult {
    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.dim()).map(|i| self.h[(i, i)].clone()).collect()
    }

    /// Lattice coordinates expressed back in terms of the generating columns:
    /// `x = U·[z; 0]`, so that `D·x = H·z`.
    pub fn lift(&self, z: &[BigInt]) -> IntVector {
        let l = self.u.rows();
        (0..l)
            .map(|r| {
                z.iter()
                    .enumerate()
                    .filter(|(_, zc)| !zc.is_zero())
                    .map(|(c, zc)| &self.u[(r, c)] * zc)
                    .sum()
            })
            .collect()
    }

    /// Integer coordinates `z` with `H·z = v`, or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<IntVector> {
        let m = self.dim();
        let mut z: IntVector = Vec::with_capacity(m);
        for i in 0..m {
            let mut rest = v[i].clone();
            for (j, zj) in z.iter().enumerate() {
                rest -= &self.h[(i, j)] * zj;
            }
            let (q, r) = rest.div_rem(&self.h[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            z.push(q);
        }
        Some(z)
    }
}

/// Replaces columns `i`, `j` of `mat` by `(s·c_i + t·c_j, p·c_i + q·c_j)`.
fn combine_columns(
    mat: &mut IntMatrix,
    i: usize,
    j: usize,
    s: &BigInt,
    t: &BigInt,
    p: &BigInt,
    q: &BigInt,
) {
    for r in 0..mat.rows() {
        let ci = mat[(r, i)].clone();
        let cj = mat[(r, j)].clone();
        mat[(r, i)] = s * &ci + t * &cj;
        mat[(r, j)] = p * &ci + q * &cj;
    }
}

/// `c_j -= f·c_i`
fn sub_column_multiple(mat: &mut IntMatrix, j: usize, i: usize, f: &BigInt) {
    for r in 0..mat.rows() {
        let delta = f * &mat[(r, i)];
        mat[(r, j)] -= delta;
    }
}

fn negate_column(mat: &mut IntMatrix, j: usize) {
    for r in 0..mat.rows() {
        let v = -&mat[(r, j)];
        mat[(r, j)] = v;
    }
}

/// Hermite normal form of a full-row-rank matrix.
pub fn hnf(d: &IntMatrix) -> Result<HnfResult> {
    let m = d.rows();
    let l = d.cols();
    if l < m {
        return Err(Error::RankDeficient);
    }
    let mut w = d.clone();
    let mut u = IntMatrix::identity(l);

    for i in 0..m {
        for j in i + 1..l {
            if w[(i, j)].is_zero() {
                continue;
            }
            if w[(i, i)].is_zero() {
                w.swap_columns(i, j);
                u.swap_columns(i, j);
                continue;
            }
            let a = w[(i, i)].clone();
            let b = w[(i, j)].clone();
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            // [[s, -b/g], [t, a/g]] has determinant 1.
            let p = -(&b / &g);
            let q = &a / &g;
            combine_columns(&mut w, i, j, &eg.x, &eg.y, &p, &q);
            combine_columns(&mut u, i, j, &eg.x, &eg.y, &p, &q);
        }
        if w[(i, i)].is_zero() {
            return Err(Error::RankDeficient);
        }
        if w[(i, i)].is_negative() {
            negate_column(&mut w, i);
            negate_column(&mut u, i);
        }
        let piv = w[(i, i)].clone();
        for j in 0..i {
            let f = w[(i, j)].div_floor(&piv);
            if !f.is_zero() {
                sub_column_multiple(&mut w, j, i, &f);
                sub_column_multiple(&mut u, j, i, &f);
            }
        }
    }

    let mut h = IntMatrix::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            h[(r, c)] = w[(r, c)].clone();
        }
    }
    let det_lambda = (0..m).fold(BigInt::one(), |acc, i| acc * &h[(i, i)]);
    Ok(HnfResult { h, u, det_lambda })
}

/// `det(D·Z^l)` for a full-row-rank `D`.
pub fn lattice_determinant(d: &IntMatrix) -> Result<BigInt> {
    Ok(hnf(d)?.det_lambda)
}

/// Whether `v ∈ D·Z^l`.
pub fn in_lattice(d: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    if v.len() != d.rows() {
        return Err(Error::DimensionMismatch {
            expected: d.rows(),
            found: v.len(),
        });
    }
    Ok(hnf(d)?.coordinates(v).is_some())
}

/// HNF basis of `L_1 ∩ L_2` for two full-rank lattices given by generators.
pub fn lattice_intersection(d1: &IntMatrix, d2: &IntMatrix) -> Result<IntMatrix> {
    if d1.rows() != d2.rows() {
        return Err(Error::DimensionMismatch {
            expected: d1.rows(),
            found: d2.rows(),
        });
    }
    let m = d1.rows();
    let h1 = hnf(d1)?.h;
    let h2 = hnf(d2)?.h;
    // Integer kernel of [H1 | -H2]: pairs (y, z) with H1·y = H2·z.
    let mut joined = IntMatrix::zeros(m, 2 * m);
    for r in 0..m {
        for c in 0..m {
            joined[(r, c)] = h1[(r, c)].clone();
            joined[(r, m + c)] = -&h2[(r, c)];
        }
    }
    let t = hnf(&joined)?;
    let mut ys = IntMatrix::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            ys[(r, c)] = t.u[(r, m + c)].clone();
        }
    }
    Ok(hnf(&h1.mul(&ys)?)?.h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check_invariants(d: &IntMatrix, res: &HnfResult) {
        let m = d.rows();
        let du = d.mul(&res.u).unwrap();
        for r in 0..m {
            for c in 0..d.cols() {
                let expect = if c < m {
                    res.h[(r, c)].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(du[(r, c)], expect);
            }
        }
        for i in 0..m {
            assert!(res.h[(i, i)].is_positive());
            for j in 0..m {
                if j > i {
                    assert!(res.h[(i, j)].is_zero());
                }
                if j < i {
                    assert!(!res.h[(i, j)].is_negative());
                    assert!(res.h[(i, j)] < res.h[(i, i)]);
                }
            }
        }
        assert_eq!(
            super::super::det::determinant(&res.u).unwrap().abs(),
            BigInt::one()
        );
    }

    #[test]
    fn coprime_row() {
        let d = mat(&[vec![2, 3]]);
        let r = hnf(&d).unwrap();
        assert_eq!(r.h, mat(&[vec![1]]));
        assert_eq!(r.det_lambda, BigInt::one());
        check_invariants(&d, &r);
    }

    #[test]
    fn identity_is_fixed() {
        let d = IntMatrix::identity(3);
        let r = hnf(&d).unwrap();
        assert_eq!(r.h, d);
        assert_eq!(r.u, d);
        assert_eq!(r.det_lambda, BigInt::one());
    }

    #[test]
    fn diagonal_det() {
        let d = mat(&[vec![2, 0], vec![0, 3]]);
        let r = hnf(&d).unwrap();
        assert_eq!(r.det_lambda, BigInt::from(6));
        check_invariants(&d, &r);
    }

    #[test]
    fn rank_deficiency_detected() {
        assert_eq!(hnf(&mat(&[vec![1, 2], vec![2, 4]])), Err(Error::RankDeficient));
        assert_eq!(hnf(&mat(&[vec![1], vec![2]])), Err(Error::RankDeficient));
        assert_eq!(hnf(&mat(&[vec![0, 0]])), Err(Error::RankDeficient));
    }

    #[test]
    fn negative_and_zero_pivots() {
        let d = mat(&[vec![0, -4, 6], vec![5, 1, -7]]);
        let r = hnf(&d).unwrap();
        check_invariants(&d, &r);
        assert_eq!(r.det_lambda, BigInt::from(2));
    }

    #[test]
    fn membership() {
        assert!(in_lattice(&mat(&[vec![2]]), &[BigInt::from(4)]).unwrap());
        assert!(!in_lattice(&mat(&[vec![2]]), &[BigInt::from(3)]).unwrap());
        assert!(!in_lattice(&mat(&[vec![15, 10]]), &[BigInt::from(7)]).unwrap());
        assert!(in_lattice(&mat(&[vec![15, 10]]), &[BigInt::from(-35)]).unwrap());
        let id = IntMatrix::identity(3);
        let v: Vec<BigInt> = [-7, 0, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert!(in_lattice(&id, &v).unwrap());
        assert!(matches!(
            in_lattice(&id, &v[..2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn intersection_of_diagonal_lattices() {
        let a = mat(&[vec![2, 0], vec![0, 1]]);
        let b = mat(&[vec![3, 0], vec![0, 4]]);
        let i = lattice_intersection(&a, &b).unwrap();
        assert_eq!(i, mat(&[vec![6, 0], vec![0, 4]]));
        let c = mat(&[vec![1, 1], vec![-1, 1]]);
        let i = lattice_intersection(&c, &IntMatrix::identity(2)).unwrap();
        assert_eq!(hnf(&i).unwrap().det_lambda, BigInt::from(2));
    }
}

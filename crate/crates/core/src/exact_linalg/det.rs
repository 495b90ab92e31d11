use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{linf, IntMatrix, RatVector};
use crate::error::{Error, Result};

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Rank over the rationals, via fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let piv = a[r][c].clone();
            for j in c..cols {
                let v = &a[i][j] * &piv - &a[r][j] * &f;
                a[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

pub fn has_full_row_rank(m: &IntMatrix) -> bool {
    m.rows() <= m.cols() && rank(m) == m.rows()
}

/// Exact rational solution of `M·x = v` for square invertible `M`.
pub fn solve_rational(m: &IntMatrix, v: &[BigRational]) -> Result<RatVector> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .chain(std::iter::once(v[i].clone()))
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !a[r][k].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(k, p);
        let piv = a[k][k].clone();
        for j in k..=n {
            a[k][j] = &a[k][j] / &piv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..=n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// `‖B^{-1}v‖_∞`, the norm whose unit ball is `B·[-1, 1]^m`.
pub fn pnorm(b: &IntMatrix, v: &[BigRational]) -> Result<BigRational> {
    Ok(linf(&solve_rational(b, v)?))
}

/// Adjugate `adj(M)` with `M·adj(M) = det(M)·I`.
pub fn adjugate(m: &IntMatrix) -> Result<IntMatrix> {
    let det = determinant(m)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let n = m.rows();
    let mut adj = IntMatrix::zeros(n, n);
    let scale = BigRational::from_integer(det);
    for c in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[c] = BigRational::one();
        let col = solve_rational(m, &e)?;
        for r in 0..n {
            let v = &col[r] * &scale;
            debug_assert!(v.is_integer());
            adj[(r, c)] = v.to_integer();
        }
    }
    Ok(adj)
}

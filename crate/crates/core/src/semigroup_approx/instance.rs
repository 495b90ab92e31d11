use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exact_linalg::{adjugate, determinant, linf_int, IntMatrix, IntVector};
use crate::{Error, Result};

/// `A` together with a fixed basis `B` of `m` of its columns.
///
/// Coordinates are kept fraction-free: for an integer vector `v` we use
/// `W(v) = Δ·B^{-1}v ∈ Z^m` with `Δ = |det B|`, so `‖v‖_{P(B)} = ‖W(v)‖_∞/Δ`
/// and `v ∈ B·Z^m` iff `W(v) ≡ 0 (mod Δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupInstance {
    a: IntMatrix,
    basis: Vec<usize>,
    /// `sign(det B)·adj(B)`, so that `W(v) = scaled_inverse·v`.
    scaled_inverse: IntMatrix,
    delta: BigInt,
    coords: Vec<IntVector>,
    mu_delta: BigInt,
    simplicial: bool,
}

impl SemigroupInstance {
    pub fn new(a: IntMatrix, basis: Vec<usize>) -> Result<Self> {
        let m = a.rows();
        if basis.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: basis.len(),
            });
        }
        let mut sorted = basis.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != m {
            return Err(Error::BadInput("basis indices must be distinct".into()));
        }
        let b = a.select_columns(&basis)?;
        let det = determinant(&b)?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let mut scaled_inverse = adjugate(&b)?;
        if det.is_negative() {
            for i in 0..m {
                for j in 0..m {
                    let v = -&scaled_inverse[(i, j)];
                    scaled_inverse[(i, j)] = v;
                }
            }
        }
        let coords: Vec<IntVector> = a
            .columns()
            .iter()
            .map(|c| scaled_inverse.mul_vec(c))
            .collect::<Result<_>>()?;
        let mu_delta = coords.iter().map(|w| linf_int(w)).max().unwrap_or_default();
        let simplicial = coords.iter().flatten().all(|x| !x.is_negative());
        Ok(SemigroupInstance {
            a,
            basis,
            scaled_inverse,
            delta: det.abs(),
            coords,
            mu_delta,
            simplicial,
        })
    }

    /// Instance whose basis is the first `m` columns.
    pub fn with_leading_basis(a: IntMatrix) -> Result<Self> {
        let m = a.rows();
        Self::new(a, (0..m).collect())
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn is_basis(&self, j: usize) -> bool {
        self.basis.contains(&j)
    }

    pub fn non_basis(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| !self.is_basis(j)).collect()
    }

    /// `|det B|`.
    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    /// `μ·|det B| = max_i ‖W(a_i)‖_∞`, always an integer.
    pub fn mu_delta(&self) -> &BigInt {
        &self.mu_delta
    }

    /// `μ = max_i ‖a_i‖_{P(B)}`.
    pub fn mu(&self) -> BigRational {
        BigRational::new(self.mu_delta.clone(), self.delta.clone())
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    pub fn require_simplicial(&self) -> Result<()> {
        if self.simplicial {
            Ok(())
        } else {
            Err(Error::NotSimplicial)
        }
    }

    /// `W(a_j)`.
    pub fn column_coords(&self, j: usize) -> &IntVector {
        &self.coords[j]
    }

    /// `W(v) = Δ·B^{-1}v`.
    pub fn coords(&self, v: &[BigInt]) -> Result<IntVector> {
        self.scaled_inverse.mul_vec(v)
    }

    /// `‖v‖_{P(B)}`, exactly.
    pub fn pnorm(&self, v: &[BigInt]) -> Result<BigRational> {
        Ok(BigRational::new(linf_int(&self.coords(v)?), self.delta.clone()))
    }

    /// `W(a_i)` for the listed columns, scaled by the coefficients.
    pub(crate) fn weighted_coords(&self, lambda: &[BigInt]) -> IntVector {
        let mut acc = vec![BigInt::zero(); self.m()];
        for (j, l) in lambda.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (a, w) in acc.iter_mut().zip(&self.coords[j]) {
                *a += l * w;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn coordinates_and_mu() {
        let a = IntMatrix::from_rows(&[vec![2, 0, 1, 3], vec![0, 2, 1, 1]]).unwrap();
        let inst = SemigroupInstance::with_leading_basis(a).unwrap();
        assert_eq!(inst.delta(), &BigInt::from(4));
        assert_eq!(inst.column_coords(2), &vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(inst.mu(), rat(3, 2));
        assert!(inst.is_simplicial());
        let v = vec![BigInt::from(3), BigInt::from(-4)];
        assert_eq!(inst.pnorm(&v).unwrap(), int(2));
    }

    #[test]
    fn negative_determinant_basis() {
        let a = IntMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 2]]).unwrap();
        let inst = SemigroupInstance::with_leading_basis(a).unwrap();
        assert_eq!(inst.delta(), &BigInt::from(1));
        // a_3 = 2·a_1 + 1·a_2
        assert_eq!(inst.column_coords(2), &vec![BigInt::from(2), BigInt::from(1)]);
        assert!(inst.is_simplicial());
    }

    #[test]
    fn outside_cone_is_flagged() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 4], vec![0, 1, -4]]).unwrap();
        let inst = SemigroupInstance::with_leading_basis(a).unwrap();
        assert!(!inst.is_simplicial());
        assert_eq!(inst.require_simplicial(), Err(Error::NotSimplicial));
        let bad = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(
            SemigroupInstance::with_leading_basis(bad),
            Err(Error::Singular)
        );
    }
}

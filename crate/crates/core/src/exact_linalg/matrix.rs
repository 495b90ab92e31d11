use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type IntVector = Vec<BigInt>;
pub type RatVector = Vec<BigRational>;

/// Dense matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::BadInput(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows of anything convertible to `BigInt`.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::BadInput("ragged matrix rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        Self::new(r, c, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[IntVector]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, |col| col.len());
        if columns.iter().any(|col| col.len() != r) {
            return Err(Error::BadInput("columns of unequal length".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in columns {
                data.push(col[i].clone());
            }
        }
        Self::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Submatrix made of the listed columns, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::BadInput("empty column selection".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&j| j >= self.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: bad,
            });
        }
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for i in 0..self.rows {
            for &j in indices {
                data.push(self[(i, j)].clone());
            }
        }
        Self::new(self.rows, indices.len(), data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<IntVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(_, xj)| !xj.is_zero())
                    .map(|(a, xj)| a * xj)
                    .sum()
            })
            .collect())
    }

    pub fn mul_rat_vec(&self, x: &[BigRational]) -> Result<RatVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, xj)| {
                        acc + BigRational::from_integer(a.clone()) * xj
                    })
            })
            .collect())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

/// Wire form of a matrix: `{"rows": m, "cols": n, "entries": [["-12", "3"], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixLiteral {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixLiteral {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let lit = MatrixLiteral::deserialize(d)?;
        if lit.entries.len() != lit.rows {
            return Err(D::Error::custom(format!(
                "expected {} rows, found {}",
                lit.rows,
                lit.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(lit.rows * lit.cols);
        for row in &lit.entries {
            if row.len() != lit.cols {
                return Err(D::Error::custom(format!(
                    "expected {} columns, found {}",
                    lit.cols,
                    row.len()
                )));
            }
            for e in row {
                let v: BigInt = e
                    .trim()
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad integer entry {e:?}")))?;
                data.push(v);
            }
        }
        IntMatrix::new(lit.rows, lit.cols, data).map_err(D::Error::custom)
    }
}

pub fn int_to_rat(v: &[BigInt]) -> RatVector {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

/// `‖v‖_∞` of a rational vector.
pub fn linf(v: &[BigRational]) -> BigRational {
    v.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

pub fn linf_int(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_roundtrip_keeps_big_entries() {
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let m = IntMatrix::new(1, 2, vec![big.clone(), BigInt::from(3)]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"rows":1,"cols":2,"entries":[["-123456789012345678901234567890","3"]]}"#
        );
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn literal_rejects_bad_shapes() {
        let bad = r#"{"rows":2,"cols":2,"entries":[["1","2"]]}"#;
        assert!(serde_json::from_str::<IntMatrix>(bad).is_err());
        let bad = r#"{"rows":1,"cols":2,"entries":[["1","x"]]}"#;
        assert!(serde_json::from_str::<IntMatrix>(bad).is_err());
    }

    #[test]
    fn empty_matrix_rejected() {
        assert!(IntMatrix::new(0, 3, vec![]).is_err());
        assert!(matches!(
            IntMatrix::new(2, 2, vec![BigInt::one()]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn columns_and_products() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(a.column(1), vec![BigInt::from(2), BigInt::from(5)]);
        let sel = a.select_columns(&[2, 0]).unwrap();
        assert_eq!(sel, IntMatrix::from_rows(&[vec![3, 1], vec![6, 4]]).unwrap());
        let x = vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1)];
        assert_eq!(a.mul_vec(&x).unwrap(), vec![BigInt::from(-2), BigInt::from(-2)]);
        let at = a.transpose();
        assert_eq!(
            a.mul(&at).unwrap(),
            IntMatrix::from_rows(&[vec![14, 32], vec![32, 77]]).unwrap()
        );
        assert_eq!(IntMatrix::from_columns(&a.columns()).unwrap(), a);
    }
}

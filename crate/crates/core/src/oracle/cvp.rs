use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::config::{check, Budget};
use crate::exact_linalg::{has_full_row_rank, hnf, IntMatrix, IntVector, RatVector};
use crate::lattice_approx::hnf_round;
use crate::{Error, Result};

fn ceil_div(a: &BigRational, d: &BigInt) -> BigInt {
    (a / BigRational::from_integer(d.clone())).ceil().to_integer()
}

/// Depth-first search over the coordinates of a lower-triangular basis `h`.
pub(crate) struct TriangularSearch<'a> {
    h: &'a IntMatrix,
    target: &'a [BigRational],
    pub(crate) nodes: u64,
    limit: u64,
    best: BigRational,
    found: Option<IntVector>,
}

impl<'a> TriangularSearch<'a> {
    /// Finds `z` with `‖h·z − target‖_∞ < bound`, minimizing that distance.
    pub(crate) fn below(
        h: &'a IntMatrix,
        target: &'a [BigRational],
        bound: BigRational,
        limit: u64,
    ) -> Self {
        TriangularSearch {
            h,
            target,
            nodes: 0,
            limit,
            best: bound,
            found: None,
        }
    }

    pub(crate) fn run(mut self) -> Result<(u64, Option<(IntVector, BigRational)>)> {
        let mut z = Vec::with_capacity(self.h.rows());
        self.dfs(&mut z, BigRational::from_integer(0.into()))?;
        let nodes = self.nodes;
        Ok((nodes, self.found.map(|z| (z, self.best))))
    }

    fn dfs(&mut self, z: &mut IntVector, worst: BigRational) -> Result<()> {
        self.nodes += 1;
        check("node", self.nodes as u128, self.limit)?;
        let i = z.len();
        if i == self.h.rows() {
            if worst < self.best {
                self.best = worst;
                self.found = Some(z.clone());
            }
            return Ok(());
        }
        let hii = self.h[(i, i)].clone();
        let mut partial = BigRational::from_integer(0.into());
        for (j, zj) in z.iter().enumerate() {
            partial += BigRational::from_integer(&self.h[(i, j)] * zj);
        }
        let offset = &self.target[i] - &partial;
        let mut zi = ceil_div(&(&offset - &self.best), &hii);
        loop {
            let dev = BigRational::from_integer(&hii * &zi) - &offset;
            if dev >= self.best {
                break;
            }
            let a = dev.abs();
            if a < self.best {
                let w = if a > worst { a } else { worst.clone() };
                if w < self.best {
                    z.push(zi.clone());
                    self.dfs(z, w)?;
                    z.pop();
                }
            }
            zi += 1;
        }
        Ok(())
    }
}

/// `x` minimizing `‖Dx − d‖_∞` exactly, together with that distance.
///
/// The search is seeded with the HNF rounding, so the result is never worse
/// than [`hnf_round`].
pub fn cvp_linf(d: &IntMatrix, target: &[BigRational], budget: &Budget) -> Result<(IntVector, BigRational)> {
    if target.len() != d.rows() {
        return Err(Error::DimensionMismatch {
            expected: d.rows(),
            found: target.len(),
        });
    }
    if !has_full_row_rank(d) {
        return Err(Error::RankDeficient);
    }
    let seed = hnf_round(d, target)?;
    let res = hnf(d)?;
    let (_, found) = TriangularSearch::below(&res.h, target, seed.error.clone(), budget.nodes).run()?;
    Ok(match found {
        Some((z, dist)) => (res.lift(&z), dist),
        None => (seed.x, seed.error),
    })
}

/// Largest error rounding along `h` can produce: `max_i H_{i,i}/2`.
pub(crate) fn rounding_radius(h: &IntMatrix) -> BigRational {
    let top = (0..h.rows()).map(|i| h[(i, i)].clone()).max().unwrap_or_default();
    BigRational::new(top, 2.into())
}

pub(crate) fn integer_target(b: &[BigInt]) -> RatVector {
    b.iter().map(|v| BigRational::from_integer(v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn rats(v: &[i64]) -> RatVector {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn midpoint_of_gap() {
        let d = IntMatrix::from_rows(&[vec![6]]).unwrap();
        let (x, dist) = cvp_linf(&d, &rats(&[3]), &Budget::default()).unwrap();
        assert_eq!(dist, int(3));
        assert_eq!(x.len(), 1);
    }

    #[test]
    fn lattice_points_are_exact() {
        let d = IntMatrix::from_rows(&[vec![2, 1], vec![0, 3]]).unwrap();
        let (x, dist) = cvp_linf(&d, &rats(&[5, 3]), &Budget::default()).unwrap();
        assert_eq!(dist, int(0));
        let v = d.mul_vec(&x).unwrap();
        assert_eq!(v, vec![BigInt::from(5), BigInt::from(3)]);
    }

    #[test]
    fn matches_box_scan() {
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![1, 3]]).unwrap();
        let t = rats(&[1, 1]);
        let (x, dist) = cvp_linf(&d, &t, &Budget::default()).unwrap();
        let mut best = None::<i64>;
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let v = [2 * a, a + 3 * b];
                let e = (v[0] - 1).abs().max((v[1] - 1).abs());
                best = Some(best.map_or(e, |x| x.min(e)));
            }
        }
        assert_eq!(dist, int(best.unwrap()));
        assert!(dist <= int(1));
        let v = d.mul_vec(&x).unwrap();
        let e = v.iter().map(|c| (c - BigInt::from(1)).abs()).max().unwrap();
        assert_eq!(BigRational::from_integer(e), dist);
    }

    #[test]
    fn rank_deficient_rejected() {
        let d = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(
            cvp_linf(&d, &rats(&[0, 0]), &Budget::default()),
            Err(Error::RankDeficient)
        );
    }
}

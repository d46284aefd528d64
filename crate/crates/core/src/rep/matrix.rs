//! Small exact integer matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{RaagError, Result};

/// A square integer matrix with exact arithmetic. Multiplication checks for
/// overflow; determinants use fraction-free elimination in 128-bit space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> IntMatrix {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<IntMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(RaagError::DimensionMismatch);
        }
        Ok(IntMatrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.n + j] = x;
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(RaagError::DimensionMismatch);
        }
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    acc += i128::from(self.get(i, k)) * i128::from(other.get(k, j));
                }
                out.set(i, j, i64::try_from(acc).map_err(|_| RaagError::Overflow)?);
            }
        }
        Ok(out)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<i64> {
        let n = self.n;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| i128::from(self.get(i, j))).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let swap = (k + 1..n).find(|&r| a[r][k] != 0);
                match swap {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(RaagError::Overflow)?;
                    a[i][j] = num / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        let d = sign * a[n - 1][n - 1];
        i64::try_from(d).map_err(|_| RaagError::Overflow)
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(4).det().unwrap(), 1);
        let m = IntMatrix::from_rows(&[&[-1, 0], &[2, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), -1);
        let s = IntMatrix::from_rows(&[&[2, 3], &[4, 6]]).unwrap();
        assert_eq!(s.det().unwrap(), 0);
        let t = IntMatrix::from_rows(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]).unwrap();
        assert_eq!(t.det().unwrap(), 1);
    }

    #[test]
    fn mul_and_identity() {
        let m = IntMatrix::from_rows(&[&[-1, 0], &[2, 1]]).unwrap();
        let id = IntMatrix::identity(2);
        assert_eq!(m.mul(&id).unwrap(), m);
        let sq = m.mul(&m).unwrap();
        assert_eq!(sq, IntMatrix::from_rows(&[&[1, 0], &[0, 1]]).unwrap());
    }

    #[test]
    fn serde_round_trip() {
        let m = IntMatrix::from_rows(&[&[1, -2], &[0, 7]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}

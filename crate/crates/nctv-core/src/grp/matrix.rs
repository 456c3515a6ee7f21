//! Small square integer matrices with i64 entries, enough for the
//! point groups and the Smith normal form computations on `1 - N`.

use std::fmt;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMat {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMat {
    pub fn new(dim: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        IntMat { dim, entries }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim);
            entries.extend_from_slice(r);
        }
        IntMat { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = IntMat { dim, entries: vec![0; dim * dim] };
        for i in 0..dim {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn scalar(dim: usize, c: i64) -> Self {
        let mut m = IntMat { dim, entries: vec![0; dim * dim] };
        for i in 0..dim {
            m[(i, i)] = c;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMat::identity(self.dim)
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = IntMat { dim: d, entries: vec![0; d * d] };
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> IntMat {
        let mut base = self.clone();
        let mut acc = IntMat::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn neg(&self) -> IntMat {
        IntMat { dim: self.dim, entries: self.entries.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.dim, other.dim);
        IntMat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination in i128.
    pub fn det(&self) -> i64 {
        let d = self.dim;
        let mut m: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut denom = 1i128;
        for k in 0..d {
            if m[k * d + k] == 0 {
                let pivot = (k + 1..d).find(|&r| m[r * d + k] != 0);
                match pivot {
                    Some(r) => {
                        for j in 0..d {
                            m.swap(k * d + j, r * d + j);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    m[i * d + j] =
                        (m[i * d + j] * m[k * d + k] - m[i * d + k] * m[k * d + j]) / denom;
                }
                m[i * d + k] = 0;
            }
            denom = m[k * d + k];
        }
        i64::try_from(sign * m[(d - 1) * d + (d - 1)]).expect("determinant fits in i64")
    }

    /// Order of the matrix in GL_d(Z), searched up to `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut acc = self.clone();
        for j in 1..=cap {
            if acc.is_identity() {
                return Some(j);
            }
            acc = acc.mul(self);
        }
        None
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = IntMat::from_rows(&[&[2, 1], &[-1, 1]]);
        assert_eq!(m.det(), 3);
        let m = IntMat::from_rows(&[&[1, 1], &[-1, 1]]);
        assert_eq!(m.det(), 2);
        assert_eq!(IntMat::scalar(3, 2).det(), 8);
        assert_eq!(IntMat::from_rows(&[&[1, 2], &[2, 4]]).det(), 0);
    }

    #[test]
    fn order_of_rotations() {
        let z4 = IntMat::from_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(z4.order(12), Some(4));
        let z6 = IntMat::from_rows(&[&[0, -1], &[1, 1]]);
        assert_eq!(z6.order(12), Some(6));
        let shear = IntMat::from_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(shear.order(12), None);
    }
}

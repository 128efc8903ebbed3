use std::fmt;

use serde::{Deserialize, Serialize};

use super::zn::{add_mod, mul_mod};
use crate::error::{Error, Result};

/// Dense matrix over ℤ/n acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ResidueMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        Self { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: u64, dim: usize) -> Self {
        let mut m = Self::zeros(modulus, dim, dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod `modulus`.
    pub fn from_rows(modulus: u64, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| x % modulus));
        }
        Ok(Self { modulus, rows: rows.len(), cols, data })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `v · self`.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.rows);
        let n = self.modulus;
        let mut out = vec![0u64; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let row = self.row(i);
            for (o, &a) in out.iter_mut().zip(row) {
                *o = add_mod(*o, mul_mod(vi, a, n), n);
            }
        }
        out
    }

    pub fn mul(&self, other: &ResidueMatrix) -> ResidueMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        assert_eq!(self.modulus, other.modulus);
        let mut out = ResidueMatrix::zeros(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            let r = other.apply(self.row(i));
            out.data[i * other.cols..(i + 1) * other.cols].copy_from_slice(&r);
        }
        out
    }

    pub fn add(&self, other: &ResidueMatrix) -> ResidueMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let n = self.modulus;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add_mod(a, b, n)).collect();
        ResidueMatrix { modulus: n, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> ResidueMatrix {
        let n = self.modulus;
        let data = self.data.iter().map(|&a| mul_mod(a, c, n)).collect();
        ResidueMatrix { modulus: n, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> ResidueMatrix {
        let mut out = ResidueMatrix::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &ResidueMatrix) -> ResidueMatrix {
        let mut out = ResidueMatrix::zeros(self.modulus, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Copies `block` into position `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &ResidueMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueMatrix(mod {}, ", self.modulus)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()?;
        write!(f, ")")
    }
}

/// Sum of two row vectors in ℤ/n.
pub fn vec_add(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, n)).collect()
}

pub fn vec_scale(a: &[u64], c: u64, n: u64) -> Vec<u64> {
    a.iter().map(|&x| mul_mod(x, c, n)).collect()
}

pub fn vec_sub(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| super::zn::sub_mod(x, y, n)).collect()
}

pub fn unit_vector(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

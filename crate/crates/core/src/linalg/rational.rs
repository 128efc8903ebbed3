//! Exact linear algebra over ℚ with arbitrary-precision fractions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rational matrix");
            data.extend(r);
        }
        Self { rows: nrows, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space `{x : self·x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f).clone();
                }
                v
            })
            .collect()
    }
}

/// Dimension of the span of a list of vectors.
pub fn span_dim(vectors: &[Vec<BigRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RationalMatrix::from_rows(vectors[0].len(), vectors.to_vec()).rank()
}

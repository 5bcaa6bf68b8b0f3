use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_rat, parse_rat, rat, Rat};
use crate::error::{Error, Result};

/// Dense rational matrix, row-major.
///
/// A matrix with `rows x cols` entries models a linear map from a
/// `cols`-dimensional space to a `rows`-dimensional one acting on column
/// vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Mat { rows: n, cols, data })
    }

    /// Convenience for tests and fixtures. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Mat::from_rows(rows, cols).expect("rectangular")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the map to a column vector.
    pub fn apply(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for a map with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row-echelon form, the rank, and the pivot column of each
    /// nonzero row.
    pub fn rref_with_pivots(&self) -> (Mat, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(src) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(src, lead);
            let inv = m.get(lead, col).recip();
            for j in col..m.cols {
                let x = &m.data[lead * m.cols + j] * &inv;
                m.data[lead * m.cols + j] = x;
            }
            for r in 0..m.rows {
                if r == lead || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let delta = &factor * m.get(lead, j);
                    if !delta.is_zero() {
                        m.data[r * m.cols + j] -= delta;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, lead, pivots)
    }

    pub fn rref(&self) -> (Mat, usize) {
        let (m, rank, _) = self.rref_with_pivots();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Inverse of a square matrix, by reducing `[M | I]`.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.rows;
        if self.cols != n {
            return Err(Error::Dimension(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, rank, pivots) = aug.rref_with_pivots();
        if rank < n || pivots.last().is_some_and(|&c| c >= n) {
            return Err(Error::Dimension("matrix is singular".into()));
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(format_rat).collect()).collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>], cols: usize) -> Result<Mat> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(parsed, cols)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}{:?}", self.rows, self.cols, self.to_string_rows())
    }
}

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Dense matrix over Gaussian rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[ExactScalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<ExactScalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dims("ragged rows"));
        }
        Ok(ExactMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Builds a `len × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[Vec<ExactScalar>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::dims("column length mismatch"));
        }
        let mut m = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(ExactScalar::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if v.len() != self.cols {
            return Err(Error::dims(format!("matrix has {} columns, vector has length {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = ExactScalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::dims("shape mismatch"));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}` as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![ExactScalar::zero(); self.cols];
                x[f] = ExactScalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -&r[(row, f)];
                }
                x
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<ExactScalar> {
        if !self.is_square() {
            return Err(Error::dims("determinant of a non-square matrix"));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = ExactScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(ExactScalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= &d;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dims("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular("matrix is not invertible".into()));
        }
        Ok(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Unique solution of `A x = b`; errors if `A` is singular or non-square.
    pub fn solve(&self, b: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if b.len() != self.rows {
            return Err(Error::dims("right-hand side length"));
        }
        let n = self.cols;
        let aug = Self::from_fn(self.rows, n + 1, |i, j| if j < n { self[(i, j)].clone() } else { b[i].clone() });
        let (r, pivots) = aug.rref();
        if pivots.contains(&n) {
            return Err(Error::Singular("inconsistent linear system".into()));
        }
        if pivots.len() < n {
            return Err(Error::Singular("underdetermined linear system".into()));
        }
        Ok((0..n).map(|i| r[(i, n)].clone()).collect())
    }

    pub fn trace(&self) -> ExactScalar {
        let mut t = ExactScalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; fallible callers use the `try_` methods.
impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix shapes agree")
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).expect("matrix shapes agree")
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).expect("matrix shapes agree")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

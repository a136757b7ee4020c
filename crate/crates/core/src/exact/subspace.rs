//! Finite-dimensional subspaces in canonical reduced row-echelon form.
//!
//! Rows are stored sparsely: spans of polynomials live in spaces with
//! hundreds of monomial coordinates, and most generators touch only a few.

use std::collections::BTreeMap;

use super::matrix::ExactMatrix;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, ExactScalar)>;

pub fn sparse_from_dense(v: &[ExactScalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Incremental semi-echelon basis: every row has leading entry 1 at a
/// distinct pivot column. Rows are not reduced against each other until
/// [`EchelonBuilder::finish`].
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder { ambient, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        let mut b = Self::new(s.ambient);
        for r in &s.rows {
            b.pivot_row.insert(r[0].0, b.rows.len());
            b.rows.push(r.clone());
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` modulo the current rows; the remainder has no entries on pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, ExactScalar> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(k, _)| self.pivot_row.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((col, coef)) = next else { break };
            let row = &self.rows[self.pivot_row[&col]];
            for (j, x) in row {
                let delta = &coef * x;
                let entry = work.entry(*j).or_default();
                *entry -= &delta;
                if entry.is_zero() {
                    work.remove(j);
                }
            }
            cursor = col + 1;
        }
        work.into_iter().collect()
    }

    /// Inserts `v`; returns `true` when it was independent of the current rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.iter().all(|(i, _)| *i < self.ambient));
        let rem = self.reduce(v);
        self.push_reduced(rem)
    }

    pub fn insert_dense(&mut self, v: &[ExactScalar]) -> bool {
        self.insert(&sparse_from_dense(v))
    }

    fn push_reduced(&mut self, mut rem: SparseVec) -> bool {
        let Some((lead, c)) = rem.first().cloned() else {
            return false;
        };
        if !c.is_one() {
            let inv = c.inv().expect("leading entry is nonzero");
            for (_, x) in rem.iter_mut() {
                *x = &*x * &inv;
            }
        }
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(rem);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn finish(self) -> Subspace {
        let EchelonBuilder { ambient, rows, pivot_row } = self;
        // rows ordered by pivot, then back-substituted from the bottom
        let mut ordered: Vec<SparseVec> = pivot_row.values().map(|&i| rows[i].clone()).collect();
        let pivots: Vec<usize> = pivot_row.keys().copied().collect();
        for i in (0..ordered.len()).rev() {
            let mut work: BTreeMap<usize, ExactScalar> = std::mem::take(&mut ordered[i]).into_iter().collect();
            for (k, &p) in pivots.iter().enumerate().skip(i + 1) {
                let Some(coef) = work.get(&p).cloned() else { continue };
                for (j, x) in &ordered[k] {
                    let delta = &coef * x;
                    let entry = work.entry(*j).or_default();
                    *entry -= &delta;
                    if entry.is_zero() {
                        work.remove(j);
                    }
                }
            }
            ordered[i] = work.into_iter().collect();
        }
        Subspace { ambient, rows: ordered }
    }
}

/// A subspace of `ambient_dim`-dimensional coordinate space, stored as its
/// canonical reduced row-echelon basis. Equality is basis equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, rows: (0..ambient).map(|i| vec![(i, ExactScalar::one())]).collect() }
    }

    /// Span of dense coordinate vectors.
    pub fn span(vectors: &[Vec<ExactScalar>], ambient: usize) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::dims(format!("vector of length {} in ambient dimension {ambient}", v.len())));
        }
        let mut b = EchelonBuilder::new(ambient);
        for v in vectors {
            b.insert_dense(v);
        }
        Ok(b.finish())
    }

    pub fn span_sparse<'a>(vectors: impl IntoIterator<Item = &'a SparseVec>, ambient: usize) -> Result<Self> {
        let mut b = EchelonBuilder::new(ambient);
        for v in vectors {
            if v.last().is_some_and(|(i, _)| *i >= ambient) {
                return Err(Error::dims("sparse index beyond ambient dimension"));
            }
            b.insert(v);
        }
        Ok(b.finish())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn basis_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows.len(), self.ambient);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }

    pub fn basis_dense(&self) -> Vec<Vec<ExactScalar>> {
        self.rows.iter().map(|r| dense_from_sparse(r, self.ambient)).collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::dims(format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        EchelonBuilder::from_subspace(self).contains(v)
    }

    pub fn contains_vector(&self, v: &[ExactScalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::dims("vector length"));
        }
        Ok(self.contains_sparse(&sparse_from_dense(v)))
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        let b = EchelonBuilder::from_subspace(self);
        Ok(other.rows.iter().all(|r| b.contains(r)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut b = EchelonBuilder::from_subspace(self);
        for r in &other.rows {
            b.insert(r);
        }
        Ok(b.finish())
    }

    /// Intersection by the Zassenhaus construction on `[a | a]`, `[b | 0]`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut b = EchelonBuilder::new(2 * n);
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().map(|(i, x)| (i + n, x.clone())));
            b.insert(&v);
        }
        for r in &other.rows {
            b.insert(r);
        }
        let full = b.finish();
        let rows: Vec<SparseVec> = full
            .rows
            .into_iter()
            .filter(|r| r[0].0 >= n)
            .map(|r| r.into_iter().map(|(i, x)| (i - n, x)).collect())
            .collect();
        Subspace::span_sparse(rows.iter(), n)
    }

    /// `dim(A) − dim(A ∩ B)`.
    pub fn quotient_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.dim() - self.intersect(other)?.dim())
    }
}

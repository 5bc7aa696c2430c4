//! Column-sparse exact matrices for module actions.

use crate::linalg::Matrix;
use crate::rational::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

pub type SparseVec = BTreeMap<usize, Q>;

pub fn add_scaled(acc: &mut SparseVec, v: &SparseVec, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in v {
        let e = acc.entry(i).or_insert_with(Q::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(&i);
        }
    }
}

pub fn unit(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Q::from_integer(1.into()));
    v
}

/// `cols[j]` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { rows: n, cols: (0..n).map(unit).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in v {
            add_scaled(&mut out, &self.cols[j], c);
        }
        out
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparseMat) -> SparseMat {
        SparseMat { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        let mut cols = self.cols.clone();
        let m1 = -Q::from_integer(1.into());
        for (c, o) in cols.iter_mut().zip(&other.cols) {
            add_scaled(c, o, &m1);
        }
        SparseMat { rows: self.rows, cols }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for (&i, x) in c {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let cols = (0..m.cols)
            .map(|j| (0..m.rows).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect())
            .collect();
        SparseMat { rows: m.rows, cols }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }
}

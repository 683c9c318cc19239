//! Exact linear algebra over Q(q^(1/N)).
//!
//! Dense Gauss-Jordan elimination with first-nonzero pivoting for the small
//! square systems of the calculus layer, reduced row echelon form with free
//! column extraction for kernels, and an incremental sparse span used by the
//! ideal-membership oracle. All arithmetic is exact; a pivot is any nonzero
//! entry, taken in scan order so results are deterministic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qfield::QScalar;

/// Dense matrix with row-major storage.
#[derive(Clone, Debug)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<QScalar>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize, root: u32) -> Self {
        QMat { rows, cols, data: vec![QScalar::zero(root); rows * cols] }
    }

    pub fn identity(n: usize, root: u32) -> Self {
        let mut m = QMat::zero(n, n, root);
        for i in 0..n {
            *m.at_mut(i, i) = QScalar::one(root);
        }
        m
    }

    pub fn from_columns(columns: &[Vec<QScalar>], root: u32) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = QMat::zero(rows, columns.len(), root);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column set");
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &QScalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut QScalar {
        &mut self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form. Returns the pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // First nonzero entry in this column at or below `row`.
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).invert().expect("pivot is nonzero");
            for j in col..self.cols {
                let v = self.at(row, j).mul(&inv);
                *self.at_mut(row, j) = v;
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for j in col..self.cols {
                    let v = self.at(r, j).sub(&factor.mul(self.at(row, j)));
                    *self.at_mut(r, j) = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.rref().len()
    }

    /// Exact inverse of a square matrix via Gauss-Jordan on `[A | I]`.
    pub fn inverse(&self, root: u32) -> Result<QMat> {
        if self.rows != self.cols {
            return Err(Error::Internal("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = QMat::zero(n, 2 * n, root);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = QScalar::one(root);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return Err(Error::Internal("matrix is singular".into()));
        }
        let mut inv = QMat::zero(n, n, root);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    pub fn mul_vec(&self, v: &[QScalar], root: u32) -> Vec<QScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = QScalar::zero(root);
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc = acc.add(&self.at(i, j).mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn null_space(&self, root: u32) -> Vec<Vec<QScalar>> {
        let mut copy = self.clone();
        let pivots = copy.rref();
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut vec = vec![QScalar::zero(root); self.cols];
            vec[free] = QScalar::one(root);
            for (r, &pc) in pivot_set.iter().enumerate() {
                vec[pc] = copy.at(r, free).neg();
            }
            basis.push(vec);
        }
        basis
    }
}

/// An incrementally built row space over sparse vectors keyed by an ordered
/// index type. Rows are kept fully reduced against each other, pivoting on
/// the smallest key, so membership tests are a single reduction pass.
#[derive(Clone, Debug, Default)]
pub struct SparseSpan<K: Ord + Clone> {
    rows: Vec<BTreeMap<K, QScalar>>,
}

impl<K: Ord + Clone> SparseSpan<K> {
    pub fn new() -> Self {
        SparseSpan { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The fully reduced rows; each row's first key is its pivot and every
    /// pivot has coefficient one and appears in no other row.
    pub fn rows(&self) -> &[BTreeMap<K, QScalar>] {
        &self.rows
    }

    fn reduce(&self, vec: &mut BTreeMap<K, QScalar>) {
        for row in &self.rows {
            let pivot = row.keys().next().expect("stored rows are nonzero");
            let Some(c) = vec.get(pivot).cloned() else { continue };
            if c.is_zero() {
                vec.remove(pivot);
                continue;
            }
            for (k, v) in row {
                let entry = vec.remove(k).map_or_else(|| c.mul(v).neg(), |e| e.sub(&c.mul(v)));
                if !entry.is_zero() {
                    vec.insert(k.clone(), entry);
                }
            }
        }
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, mut vec: BTreeMap<K, QScalar>) -> bool {
        vec.retain(|_, v| !v.is_zero());
        self.reduce(&mut vec);
        if vec.is_empty() {
            return false;
        }
        let lead = vec.values().next().unwrap().clone();
        let inv = lead.invert().expect("lead is nonzero");
        for v in vec.values_mut() {
            *v = v.mul(&inv);
        }
        // Keep existing rows reduced against the new one.
        let pivot = vec.keys().next().unwrap().clone();
        for row in &mut self.rows {
            let Some(c) = row.get(&pivot).cloned() else { continue };
            for (k, v) in &vec {
                let entry = row.remove(k).map_or_else(|| c.mul(v).neg(), |e| e.sub(&c.mul(v)));
                if !entry.is_zero() {
                    row.insert(k.clone(), entry);
                }
            }
        }
        self.rows.push(vec);
        true
    }

    pub fn contains(&self, vec: &BTreeMap<K, QScalar>) -> bool {
        let mut v = vec.clone();
        v.retain(|_, c| !c.is_zero());
        self.reduce(&mut v);
        v.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> QScalar {
        QScalar::from_int(v, 2)
    }

    #[test]
    fn inverse_round_trip() {
        let mut m = QMat::zero(2, 2, 2);
        *m.at_mut(0, 0) = QScalar::q_int(1, 2);
        *m.at_mut(0, 1) = s(1);
        *m.at_mut(1, 0) = s(3);
        *m.at_mut(1, 1) = QScalar::q_int(-1, 2);
        let inv = m.inverse(2).unwrap();
        let e1 = m.mul_vec(&[inv.at(0, 0).clone(), inv.at(1, 0).clone()], 2);
        assert!(e1[0].is_one() && e1[1].is_zero());
    }

    #[test]
    fn null_space_of_rank_one() {
        let mut m = QMat::zero(1, 3, 2);
        *m.at_mut(0, 0) = s(1);
        *m.at_mut(0, 1) = s(2);
        *m.at_mut(0, 2) = s(-1);
        let base = m.null_space(2);
        assert_eq!(base.len(), 2);
        for v in base {
            assert!(m.mul_vec(&v, 2)[0].is_zero());
        }
    }

    #[test]
    fn sparse_span_membership() {
        let mut span: SparseSpan<u32> = SparseSpan::new();
        let v1: BTreeMap<u32, QScalar> = [(0, s(1)), (1, s(2))].into_iter().collect();
        let v2: BTreeMap<u32, QScalar> = [(1, s(1)), (2, s(1))].into_iter().collect();
        assert!(span.insert(v1.clone()));
        assert!(span.insert(v2.clone()));
        assert!(!span.insert(v1.clone()));
        // v1 + 2*v2 is in the span, a lone basis vector e_0 - e_2 is not.
        let mut combo = v1.clone();
        for (k, v) in &v2 {
            let e = combo.remove(k).unwrap_or_else(|| QScalar::zero(2));
            combo.insert(*k, e.add(&v.mul(&s(2))));
        }
        assert!(span.contains(&combo));
        let probe: BTreeMap<u32, QScalar> = [(0, s(1)), (3, s(-1))].into_iter().collect();
        assert!(!span.contains(&probe));
        assert_eq!(span.rank(), 2);
    }
}

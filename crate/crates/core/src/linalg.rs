//! Dense Gaussian elimination over GF(p).

use crate::prime::{PrimeField, Scalar};

/// Row-major dense matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [Scalar] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// In-place reduced row echelon form restricted to the first `limit`
    /// columns; returns the pivot columns.
    fn rref_upto(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for v in self.row_mut(r) {
                *v = f.mul(*v, inv);
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for (v, &pv) in self.row_mut(i).iter_mut().zip(&pivot_row) {
                    if pv != 0 {
                        *v = f.sub(*v, f.mul(factor, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let limit = self.cols;
        self.rref_upto(limit)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Nullspace basis, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        nullspace_from_rref(&m, &pivots, self.cols)
    }

    /// Solves `self * x = rhs` by eliminating the augmented matrix. Returns a
    /// particular solution (free variables zero) and the nullspace basis, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.set(i, self.cols, rhs[i]);
        }
        let pivots = aug.rref_upto(self.cols);
        let rank = pivots.len();
        if (rank..self.rows).any(|i| aug.get(i, self.cols) != 0) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some((x, nullspace_from_rref(&aug, &pivots, self.cols)))
    }
}

fn nullspace_from_rref(m: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let f = m.field;
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            v
        })
        .collect()
}

/// Row space of `vectors` as reduced echelon rows, with their pivot columns.
/// Canonical: two spanning sets of one subspace give identical output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonBasis {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, width: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Self { rows: Vec::new(), pivots: Vec::new() };
        }
        let mut m = Matrix::from_rows(field, width, vectors);
        let pivots = m.rref();
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Self { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the span: pivot coordinates zeroed.
    pub fn reduce(&self, field: PrimeField, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = out[pc];
            if c != 0 {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = field.sub(*o, field.mul(c, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, field: PrimeField, v: &[Scalar]) -> bool {
        self.reduce(field, v).iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_solves_to_rhs() {
        let f = gf(5);
        let id = Matrix::from_rows(f, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let (x, ns) = id.solve(&[4, 2, 3]).unwrap();
        assert_eq!(x, vec![4, 2, 3]);
        assert!(ns.is_empty());
    }

    #[test]
    fn inconsistent_system() {
        let f = gf(2);
        let m = Matrix::from_rows(f, 2, &[vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&[0, 1]).is_none());
        let (x, ns) = m.solve(&[1, 1]).unwrap();
        assert_eq!(x, vec![1, 0]);
        assert_eq!(ns, vec![vec![1, 1]]);
    }

    #[test]
    fn echelon_is_canonical() {
        let f = gf(3);
        let a = EchelonBasis::new(f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let b = EchelonBasis::new(f, 3, &[vec![1, 0, 1], vec![2, 2, 1], vec![1, 2, 0]]);
        assert_eq!(a, b);
        assert!(a.contains(f, &[2, 1, 0]));
        assert!(!a.contains(f, &[2, 1, 1]));
    }

    proptest! {
        #[test]
        fn nullspace_is_annihilated(entries in prop::collection::vec(0u32..3, 20)) {
            let f = gf(3);
            let rows: Vec<Vec<u32>> = entries.chunks(5).map(|c| c.to_vec()).collect();
            let m = Matrix::from_rows(f, 5, &rows);
            let ns = m.nullspace();
            prop_assert_eq!(ns.len() + m.rank(), 5);
            for v in ns {
                prop_assert!(m.mul_vec(&v).iter().all(|&c| c == 0));
            }
        }
    }
}

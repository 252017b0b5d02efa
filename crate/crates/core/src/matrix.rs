//! Dense exact linear algebra over a `FieldSpec`.
//!
//! Row-major matrices acting on column vectors. Elimination uses
//! lexicographically-first pivoting so every computed basis is
//! reproducible byte-for-byte across runs.

use crate::field::{Coeff, FieldSpec};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    data: Vec<Coeff>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Self {
        Mat { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Mat::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Coeff>>, cols: usize, field: FieldSpec) -> Self {
        let nr = rows.len();
        let mut data = Vec::with_capacity(nr * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Mat { rows: nr, cols, field, data }
    }

    pub fn from_fn(rows: usize, cols: usize, field: FieldSpec, mut f: impl FnMut(usize, usize) -> Coeff) -> Self {
        let mut m = Mat::zero(rows, cols, field);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.field, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Mat::from_fn(self.rows, self.cols, self.field, |i, j| {
            self.field.add(self.at(i, j), other.at(i, j))
        })
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Mat::from_fn(self.rows, self.cols, self.field, |i, j| {
            self.field.sub(self.at(i, j), other.at(i, j))
        })
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, self.field, |i, j| self.field.neg(self.at(i, j)))
    }

    pub fn scale(&self, c: &Coeff) -> Mat {
        Mat::from_fn(self.rows, self.cols, self.field, |i, j| self.field.mul(self.at(i, j), c))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = self.field;
        let mut out = Mat::zero(self.rows, other.cols, f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = f.add(out.at(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Coeff]) -> Vec<Coeff> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.at(i, k);
                if !a.is_zero() {
                    out[i] = f.add(&out[i], &f.mul(a, x));
                }
            }
        }
        out
    }

    /// Horizontal stack [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, self.field, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { other.at(i, j - self.cols).clone() }
        })
    }

    /// Vertical stack [self; other].
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, self.field, |i, j| {
            if i < self.rows { self.at(i, j).clone() } else { other.at(i - self.rows, j).clone() }
        })
    }

    pub fn col(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn from_cols(cols: Vec<Vec<Coeff>>, rows: usize, field: FieldSpec) -> Mat {
        let m = Mat::from_fn(cols.len(), rows, field, |i, j| cols[i][j].clone());
        m.transpose()
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // first nonzero entry in this column at or below `row`
            let mut pr = None;
            for r in row..self.rows {
                if !self.at(r, col).is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            self.swap_rows(row, pr);
            let inv = f.inv(self.at(row, col)).unwrap();
            for j in col..self.cols {
                let v = f.mul(self.at(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        let v = f.sub(self.at(r, j), &f.mul(&factor, self.at(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
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
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {x : Ax = 0}, as columns.
    pub fn kernel(&self) -> Mat {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zero(self.cols, free.len(), f);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(m.at(r, fc)));
            }
        }
        basis
    }

    /// Column-space basis: the columns of `self` at pivot positions.
    pub fn image_basis(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Mat::zero(self.rows, pivots.len(), self.field);
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, k, self.at(i, c).clone());
            }
        }
        out
    }

    /// Solves A x = b; `None` if inconsistent. Free variables are set to
    /// zero (first-pivot determinism).
    pub fn solve(&self, b: &[Coeff]) -> Option<Vec<Coeff>> {
        assert_eq!(self.rows, b.len());
        let f = self.field;
        let bm = Mat::from_fn(self.rows, 1, f, |i, _| b[i].clone());
        let mut aug = self.hstack(&bm);
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Solves A X = B for a matrix right-hand side; `None` if inconsistent.
    pub fn solve_matrix(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows);
        let f = self.field;
        let mut aug = self.hstack(b);
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.cols, b.cols, f);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, aug.at(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Mat::identity(n, self.field));
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(Mat::from_fn(n, n, self.field, |i, j| aug.at(i, n + j).clone()))
    }

    /// Rows spanning the same row space, in rref form (used as a canonical
    /// subspace representation).
    pub fn row_space(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Mat::zero(pivots.len(), self.cols, self.field);
        for r in 0..pivots.len() {
            for j in 0..self.cols {
                out.set(r, j, m.at(r, j).clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Coeff {
        FieldSpec::Rationals.from_i64(n)
    }

    #[test]
    fn rref_and_rank() {
        let f = FieldSpec::Rationals;
        let m = Mat::from_rows(
            vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]],
            3,
            f,
        );
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let f = FieldSpec::Rationals;
        let m = Mat::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]], 2, f);
        let x = m.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2, f));
        let sing = Mat::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]], 2, f);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[q(0), q(1)]).is_none());
    }

    #[test]
    fn image_basis_spans() {
        let f = FieldSpec::Rationals;
        let m = Mat::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2, f);
        let im = m.image_basis();
        assert_eq!(im.cols, 1);
    }

    #[test]
    fn fp_kernel() {
        let f = FieldSpec::Prime(7);
        let m = Mat::from_rows(
            vec![vec![f.from_i64(3), f.from_i64(1)], vec![f.from_i64(6), f.from_i64(2)]],
            2,
            f,
        );
        assert_eq!(m.rank(), 1);
        assert!(m.mul(&m.kernel()).is_zero());
    }
}

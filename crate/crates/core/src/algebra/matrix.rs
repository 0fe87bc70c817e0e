//! Dense matrices over the rationals.
//!
//! Elimination picks the first nonzero entry of each column as pivot; exact
//! arithmetic needs no pivoting heuristics.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is not
    /// `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix { rows, cols, data }
    }

    /// Stacks equal-length vectors as rows. `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Uses the vectors as columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows).map(|i| super::rational::dot(self.row(i), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Forward elimination in place, returning pivot columns. When `reduce` is
    /// set the result is the reduced row echelon form.
    fn eliminate(&mut self, reduce: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            if reduce {
                for j in c..self.cols {
                    let v = &self.data[r * self.cols + j] * &inv;
                    self.data[r * self.cols + j] = v;
                }
            }
            let pivot_row: Vec<Rational> = self.row(r)[c..].to_vec();
            let start = if reduce { 0 } else { r + 1 };
            for i in start..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = if reduce { self[(i, c)].clone() } else { &self[(i, c)] * &inv };
                for (off, pv) in pivot_row.iter().enumerate() {
                    if pv.is_zero() {
                        continue;
                    }
                    let idx = i * self.cols + c + off;
                    let v = &self.data[idx] - &factor * pv;
                    self.data[idx] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and the strictly increasing pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Basis of the null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length differs from row count");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Nonzero rows of the reduced row echelon form: a canonical basis of the
    /// row space.
    pub fn row_space_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for x in self.row(i) {
                write!(f, "{} ", x)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Rank of the span of `vectors` (all of length `dim`).
pub fn rank(dim: usize, vectors: &[Vec<Rational>]) -> usize {
    Matrix::from_rows(dim, vectors).rank()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

/// Canonical basis (reduced echelon rows) of `span(a) ∩ span(b)`.
pub fn span_intersect(dim: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut columns: Vec<Vec<Rational>> = a.to_vec();
    columns.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Matrix::from_columns(dim, &columns);
    let vecs: Vec<Vec<Rational>> = m
        .kernel_basis()
        .into_iter()
        .map(|k| {
            let mut acc = vec![Rational::zero(); dim];
            for (coef, v) in k.iter().zip(a) {
                if coef.is_zero() {
                    continue;
                }
                for (slot, x) in acc.iter_mut().zip(v) {
                    *slot += coef * x;
                }
            }
            acc
        })
        .collect();
    if vecs.is_empty() {
        return vecs;
    }
    Matrix::from_rows(dim, &vecs).row_space_basis()
}

/// Whether `v` lies in the span of `basis`.
pub fn span_contains(dim: usize, basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mut rows = basis.to_vec();
    let before = rank(dim, &rows);
    rows.push(v.to_vec());
    rank(dim, &rows) == before
}

/// Coefficients expressing `v` in terms of `vectors`, if it lies in their span.
pub fn coordinates(dim: usize, vectors: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    Matrix::from_columns(dim, vectors).solve(v)
}

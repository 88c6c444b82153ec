//! Dense exact matrices and Gauss-Jordan elimination over [`Scalar`].

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::{Error, Result, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    /// `value · I_n`.
    pub fn scalar(n: usize, value: Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Product `self · rhs`, skipping zero entries of `self`.
    ///
    /// # Panics
    ///
    /// If the inner dimensions differ.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Left-to-right product of a nonempty chain.
    pub fn product<'a>(chain: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
        let mut it = chain.into_iter();
        let first = it.next().expect("empty matrix product").clone();
        it.fold(first, |acc, m| acc.mul(m))
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Largest `|a_ij - b_ij|`.
    pub fn max_abs_diff(&self, rhs: &Matrix) -> Scalar {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).abs()).max().unwrap_or_else(Scalar::zero)
    }

    pub fn column_sums(&self) -> Vec<Scalar> {
        (0..self.cols).map(|c| (0..self.rows).map(|r| &self[(r, c)]).sum()).collect()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return Err(Error::SingularParameter("matrix is not invertible".into()));
        }
        Ok(Matrix::from_fn(n, n, |r, c| aug[r][n + c].clone()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// In-place reduced row echelon form, pivoting only in the first `ncols`
/// columns. Returns the pivot columns in row order.
pub fn rref(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].checked_inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Result of solving an augmented linear system.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// `Some(v)` for every unknown the system pins down uniquely.
    pub values: Vec<Option<Scalar>>,
    pub rank: usize,
    pub consistent: bool,
}

impl Solution {
    pub fn free_count(&self) -> usize {
        self.values.len() - self.rank
    }
}

/// Solves `A x = b` given rows `[A | b]` with `unknowns` columns in `A`.
///
/// An unknown counts as determined when its pivot row has no entries in
/// free columns.
pub fn solve(mut rows: Vec<Vec<Scalar>>, unknowns: usize) -> Solution {
    let pivots = rref(&mut rows, unknowns);
    let consistent = rows[pivots.len()..].iter().all(|r| r[unknowns].is_zero());
    let mut is_pivot = vec![false; unknowns];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut values = vec![None; unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        let row = &rows[r];
        let pinned = (0..unknowns).all(|k| is_pivot[k] || row[k].is_zero());
        if pinned {
            values[c] = Some(row[unknowns].clone());
        }
    }
    Solution { values, rank: pivots.len(), consistent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = Matrix::from_fn(2, 2, |r, c| [[s(1, 1), s(2, 1)], [s(3, 1), s(4, 1)]][r][c].clone());
        let inv = m.inverse().unwrap();
        assert_eq!(inv[(0, 0)], s(-2, 1));
        assert_eq!(inv[(1, 1)], s(-1, 2));
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = Matrix::from_fn(2, 2, |r, c| s((r + 1) as i64 * (c + 1) as i64, 1));
        assert!(matches!(m.inverse(), Err(Error::SingularParameter(_))));
    }

    #[test]
    fn zero_leading_pivot() {
        let m = Matrix::from_fn(3, 3, |r, c| if r + c == 2 { s(c as i64 + 1, 2) } else { Scalar::zero() });
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(3));
    }

    #[test]
    fn solve_reports_free_unknowns() {
        // x + y = 1, z = 2; y free
        let rows = vec![vec![s(1, 1), s(1, 1), s(0, 1), s(1, 1)], vec![s(0, 1), s(0, 1), s(1, 1), s(2, 1)]];
        let sol = solve(rows, 3);
        assert!(sol.consistent);
        assert_eq!(sol.rank, 2);
        assert_eq!(sol.free_count(), 1);
        assert_eq!(sol.values, vec![None, None, Some(s(2, 1))]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let rows = vec![vec![s(1, 1), s(1, 1)], vec![s(2, 1), s(3, 1)]];
        assert!(!solve(rows, 1).consistent);
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn inverse_round_trip(entries in proptest::collection::vec(small(), 16)) {
            let m = Matrix::from_fn(4, 4, |r, c| entries[4 * r + c].clone());
            if let Ok(inv) = m.inverse() {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(4));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(4));
            }
        }

        #[test]
        fn product_is_associative(a in proptest::collection::vec(small(), 9), b in proptest::collection::vec(small(), 9), c in proptest::collection::vec(small(), 9)) {
            let [a, b, c] = [a, b, c].map(|v| Matrix::from_fn(3, 3, |r, k| v[3 * r + k].clone()));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}

//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Exact;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Exact>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Exact::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Exact>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RationalMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Exact {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Exact) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Exact] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduces to reduced row echelon form restricted to the first
    /// `pivot_cols` columns; returns the pivot column of each pivot row.
    ///
    /// Among the candidate pivots of a column the entry with the smallest
    /// bit size is chosen, which keeps intermediate fractions short.
    fn rref(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let pick = (r..self.rows)
                .filter(|&i| !self.get(i, c).is_zero())
                .min_by_key(|&i| {
                    let v = self.get(i, c);
                    v.numer().bits() + v.denom().bits()
                });
            let Some(p) = pick else { continue };
            self.swap_rows(r, p);
            let inv = Exact::one() / self.get(r, c);
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = self.get(i, j) - &factor * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref(self.cols).len()
    }
}

/// Solves `A y = b` exactly, where the columns of `A` are `columns`.
///
/// Returns one solution (free variables set to zero) or `None` when the
/// system is inconsistent.
pub fn solve_columns(columns: &[Vec<Exact>], b: &[Exact]) -> Option<Vec<Exact>> {
    let n = columns.len();
    let m = b.len();
    assert!(columns.iter().all(|c| c.len() == m), "column length mismatch");
    let mut aug = RationalMatrix::zeros(m, n + 1);
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            aug.set(i, j, v.clone());
        }
    }
    for (i, v) in b.iter().enumerate() {
        aug.set(i, n, v.clone());
    }
    let pivots = aug.rref(n);
    for i in pivots.len()..m {
        if !aug.get(i, n).is_zero() {
            return None;
        }
    }
    let mut y = vec![Exact::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        y[c] = aug.get(r, n).clone();
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, exact_int};

    fn ints(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| exact_int(v)).collect()).collect())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(ints(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(ints(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(ints(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(ints(&[&[1, 1, 1], &[1, 2, 3], &[2, 3, 4]]).rank(), 2);
    }

    #[test]
    fn solves_consistent_systems() {
        let cols = vec![vec![exact_int(1), exact_int(3)], vec![exact_int(2), exact_int(4)]];
        let y = solve_columns(&cols, &[exact_int(5), exact_int(6)]).unwrap();
        assert_eq!(y, vec![exact_int(-4), exact(9, 2)]);
    }

    #[test]
    fn detects_inconsistency() {
        let cols = vec![vec![exact_int(1), exact_int(1), exact_int(0)]];
        assert!(solve_columns(&cols, &[exact_int(1), exact_int(2), exact_int(0)]).is_none());
        assert!(solve_columns(&cols, &[exact_int(2), exact_int(2), exact_int(0)]).is_some());
    }
}

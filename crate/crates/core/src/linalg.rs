//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free (Bareiss): rows are scaled to integers and
//! the echelon form is computed with exact integer divisions, so no rational
//! gcd churn happens during pivoting. Back-substitution is rational.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl MatQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatQ { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatQ { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !x[c].is_zero() {
                        acc += a * &x[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &MatQ) -> MatQ {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatQ { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Basis of the right nullspace `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (echelon, pivots) = self.integer_echelon();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            // Solve pivot variables bottom-up.
            for (r, &c) in pivots.iter().enumerate().rev() {
                let mut acc = Rat::zero();
                for j in (c + 1)..self.cols {
                    if !echelon[r][j].is_zero() && !x[j].is_zero() {
                        acc += Rat::from_integer(echelon[r][j].clone()) * &x[j];
                    }
                }
                x[c] = -acc / Rat::from_integer(echelon[r][c].clone());
            }
            basis.push(x);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.integer_echelon().1.len()
    }

    /// Fraction-free row echelon form. Rows are first cleared of denominators
    /// (row scaling preserves the row space and nullspace), then eliminated
    /// with the Bareiss update, which keeps every intermediate entry an exact
    /// integer minor. Returns the echelon rows and the pivot columns.
    fn integer_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    let d = self.at(r, c).denom();
                    lcm = num_integer::lcm(lcm, d.clone());
                }
                (0..self.cols)
                    .map(|c| {
                        let e = self.at(r, c);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // Smallest nonzero pivot keeps the integers from blowing up.
            let Some(p) = (row..self.rows)
                .filter(|&i| !m[i][col].is_zero())
                .min_by_key(|&i| m[i][col].magnitude().bits())
            else {
                continue;
            };
            m.swap(row, p);
            for i in (row + 1)..self.rows {
                for j in (col + 1)..self.cols {
                    let num = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                    debug_assert!((&num % &prev).is_zero());
                    m[i][j] = num / &prev;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }
}

/// A row space in reduced echelon form, supporting reduction of vectors
/// modulo the span. Used for submodule spans and quotient weight spaces.
#[derive(Clone, Debug, Default)]
pub struct RowSpan {
    cols: usize,
    /// Rows in reduced echelon form, pivot entries equal to one.
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(cols: usize) -> Self {
        RowSpan { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the span (eliminates all pivot coordinates).
    pub fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = core::mem::replace(&mut v[p], Rat::zero());
            for (j, rj) in row.iter().enumerate().skip(p + 1) {
                if !rj.is_zero() {
                    let delta = &f * rj;
                    v[j] -= delta;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v.to_vec()).iter().all(Rat::is_zero)
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &lead;
            }
        }
        // Back-eliminate to keep the form reduced.
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = core::mem::replace(&mut row[p], Rat::zero());
            debug_assert!(rp < p);
            for (j, vj) in v.iter().enumerate() {
                if j != p && !vj.is_zero() {
                    let delta = &f * vj;
                    row[j] -= delta;
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn m(rows: &[&[i64]]) -> MatQ {
        MatQ::from_rows(rows.iter().map(|r| r.iter().map(|&x| rint(x)).collect()).collect())
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.apply(v).iter().all(Rat::is_zero));
        }
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn nullspace_with_fractions() {
        let a = MatQ::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), rint(0)],
            vec![rint(1), rint(0), rat(-2, 7)],
        ]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(Rat::is_zero));
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert!(a.nullspace().is_empty());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn row_span_reduction() {
        let mut s = RowSpan::new(3);
        assert!(s.insert(vec![rint(1), rint(1), rint(0)]));
        assert!(s.insert(vec![rint(0), rint(2), rint(2)]));
        assert!(!s.insert(vec![rint(1), rint(3), rint(2)]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[rint(2), rint(4), rint(2)]));
        assert!(!s.contains(&[rint(0), rint(0), rint(1)]));
        let r = s.reduce(vec![rint(5), rint(5), rint(5)]);
        assert!(r[0].is_zero() && r[1].is_zero());
        assert_eq!(r[2], rint(5));
    }

    #[test]
    fn bareiss_matches_direct_check_on_wide_matrix() {
        // 3x5 with dependent rows; every nullspace vector must verify.
        let a = m(&[&[3, 1, 4, 1, 5], &[9, 2, 6, 5, 3], &[12, 3, 10, 6, 8]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 3);
        for v in &ns {
            assert!(a.apply(v).iter().all(Rat::is_zero));
        }
        assert_eq!(a.rank(), 2);
    }
}

//! Dense matrices over the exact rings, with fraction-free determinants.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{LaurentFraction, LaurentPolynomial, RingElem};

/// Row-major matrix over a ring of a fixed rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T: RingElem> {
    rows: usize,
    cols: usize,
    rank: u16,
    data: Vec<T>,
}

impl<T: RingElem> Matrix<T> {
    pub fn zero(rows: usize, cols: usize, rank: u16) -> Self {
        Matrix { rows, cols, rank, data: vec![T::zero(rank); rows * cols] }
    }

    pub fn identity(n: usize, rank: u16) -> Self {
        let mut m = Self::zero(n, n, rank);
        for i in 0..n {
            m.set(i, i, T::one(rank));
        }
        m
    }

    pub fn from_rows(rank: u16, rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            for v in row {
                assert_eq!(v.rank(), rank, "entry rank mismatch");
                data.push(v);
            }
        }
        Matrix { rows: nrows, cols: ncols, rank, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring_rank(&self) -> u16 {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        debug_assert_eq!(v.rank(), self.rank);
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows, self.rank);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn map<U: RingElem>(&self, rank: u16, f: impl Fn(&T) -> U) -> Matrix<U> {
        let data: Vec<U> = self
            .data
            .iter()
            .map(|v| {
                let u = f(v);
                assert_eq!(u.rank(), rank);
                u
            })
            .collect();
        Matrix { rows: self.rows, cols: self.cols, rank, data }
    }

    pub fn try_map<U: RingElem>(
        &self,
        rank: u16,
        f: impl Fn(&T) -> Result<U>,
    ) -> Result<Matrix<U>> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(f(v)?);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, rank, data })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, rank: self.rank, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg()).collect();
        Matrix { rows: self.rows, cols: self.cols, rank: self.rank, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut m = Self::zero(self.rows, other.cols, self.rank);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero(self.rank);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    /// Stack on top of `other` (same column count).
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "shape mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, rank: self.rank, data }
    }

    /// Delete one row and one column.
    pub fn minor(&self, del_row: usize, del_col: usize) -> Self {
        let mut m = Self::zero(self.rows - 1, self.cols - 1, self.rank);
        for i in 0..self.rows - 1 {
            for j in 0..self.cols - 1 {
                let si = if i < del_row { i } else { i + 1 };
                let sj = if j < del_col { j } else { j + 1 };
                m.set(i, j, self.get(si, sj).clone());
            }
        }
        m
    }

    /// Delete one row.
    pub fn drop_row(&self, del_row: usize) -> Self {
        let mut m = Self::zero(self.rows - 1, self.cols, self.rank);
        for i in 0..self.rows - 1 {
            let si = if i < del_row { i } else { i + 1 };
            for j in 0..self.cols {
                m.set(i, j, self.get(si, j).clone());
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl<T: RingElem + fmt::Display> Matrix<T> {
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect())
            .collect()
    }
}

impl<T: RingElem + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Matrix<LaurentPolynomial> {
    /// Fraction-free Bareiss determinant over Z[H].
    pub fn det(&self) -> LaurentPolynomial {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return LaurentPolynomial::one(self.rank);
        }
        let mut m: Vec<Vec<LaurentPolynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = 1i64;
        let mut prev = LaurentPolynomial::one(self.rank);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return LaurentPolynomial::zero(self.rank),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = LaurentPolynomial::zero(self.rank);
            }
            prev = m[k][k].clone();
        }
        m[n - 1][n - 1].scale(sign)
    }
}

impl Matrix<LaurentFraction> {
    /// Determinant by Gaussian elimination over the fraction field.
    pub fn det(&self) -> LaurentFraction {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return LaurentFraction::one(self.rank);
        }
        let mut m: Vec<Vec<LaurentFraction>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = LaurentFraction::one(self.rank);
        for k in 0..n {
            let pivot = match (k..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => i,
                None => return LaurentFraction::zero(self.rank),
            };
            if pivot != k {
                m.swap(k, pivot);
                det = det.neg();
            }
            let p = m[k][k].clone();
            det = det.mul(&p);
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = m[i][k].div(&p).expect("pivot nonzero");
                for j in k..n {
                    let upd = m[k][j].mul(&factor);
                    m[i][j] = m[i][j].sub(&upd);
                }
            }
        }
        det
    }

    /// Solve self · X = B (self square and invertible).
    pub fn solve(&self, b: &Matrix<LaurentFraction>) -> Result<Matrix<LaurentFraction>> {
        assert!(self.is_square(), "solve needs a square system");
        assert_eq!(self.rows, b.rows, "shape mismatch");
        let n = self.rows;
        let bc = b.cols;
        let mut m: Vec<Vec<LaurentFraction>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.get(i, j).clone())
                    .chain((0..bc).map(|j| b.get(i, j).clone()))
                    .collect()
            })
            .collect();
        for k in 0..n {
            let pivot = (k..n)
                .find(|&i| !m[i][k].is_zero())
                .ok_or(Error::SingularMatrix)?;
            m.swap(k, pivot);
            let p = m[k][k].clone();
            for j in k..n + bc {
                m[k][j] = m[k][j].div(&p).expect("pivot nonzero");
            }
            for i in 0..n {
                if i == k || m[i][k].is_zero() {
                    continue;
                }
                let factor = m[i][k].clone();
                for j in k..n + bc {
                    let upd = m[k][j].mul(&factor);
                    m[i][j] = m[i][j].sub(&upd);
                }
            }
        }
        let mut x = Matrix::zero(n, bc, self.rank);
        for i in 0..n {
            for j in 0..bc {
                x.set(i, j, m[i][n + j].clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix<LaurentFraction>> {
        self.solve(&Matrix::identity(self.rows, self.rank))
    }
}

/// Determinant of an integer matrix (Bareiss over i128).
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    assert!(m.iter().all(|r| r.len() == n), "non-square matrix");
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
}

/// Invariant factors (nonnegative, each dividing the next) of an integer
/// matrix, padded with zeros to min(rows, cols).
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let k = rows.min(cols);
    let mut factors = vec![0i64; k];
    let mut t = 0;
    while t < k {
        // Move a nonzero entry of smallest magnitude into the pivot slot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && pivot.map(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()).unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // Euclidean elimination; swaps strictly shrink |pivot|, so this ends.
        loop {
            let mut swapped = false;
            for i in t + 1..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let q = a[i][t] / a[t][t];
                for j in t..cols {
                    let s = q * a[t][j];
                    a[i][j] -= s;
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    swapped = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j] == 0 {
                    continue;
                }
                let q = a[t][j] / a[t][t];
                for row in a.iter_mut().skip(t) {
                    let s = q * row[t];
                    row[j] -= s;
                }
                if a[t][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    swapped = true;
                }
            }
            let col_clear = (t + 1..rows).all(|i| a[i][t] == 0);
            let row_clear = (t + 1..cols).all(|j| a[t][j] == 0);
            if !swapped && col_clear && row_clear {
                break;
            }
        }
        // Divisibility: fold in any offending row and redo this pivot.
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] % a[t][t] != 0);
        if let Some((i, _)) = offender {
            for jj in t..cols {
                let v = a[i][jj];
                a[t][jj] += v;
            }
            continue;
        }
        factors[t] = i64::try_from(a[t][t].abs()).expect("invariant factor overflow");
        t += 1;
    }
    factors
}

/// Inverse of an integer matrix with determinant ±1, via the adjugate.
pub fn inverse_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let d = det_i64(m);
    if d != 1 && d != -1 {
        return None;
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            // inv = adj/det; adj[i][j] = (-1)^(i+j) det(minor with row j, col i removed).
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let sgn = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = sgn * det_i64(&minor) * d;
        }
    }
    Some(inv)
}

pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        assert_eq!(a[i].len(), k, "shape mismatch");
        for (j, out_ij) in out[i].iter_mut().enumerate() {
            let mut acc = 0i128;
            for t in 0..k {
                acc += a[i][t] as i128 * b[t][j] as i128;
            }
            *out_ij = i64::try_from(acc).expect("overflow");
        }
    }
    out
}

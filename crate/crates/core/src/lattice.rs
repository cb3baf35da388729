//! Exact integer and rational linear algebra: Hermite and Smith normal
//! forms, saturated affine lattice charts, lattice indices, and the
//! generalized binomial coefficient.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Exact rational; always normalized with positive denominator.
pub type Rat = BigRational;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from its rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        IntMatrix {
            rows: rows.len(),
            cols: ncols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    /// Builds a matrix from its columns.
    pub fn from_cols(cols: &[Vec<Int>]) -> Self {
        let nrows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), nrows);
            for i in 0..nrows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a += q * row b
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for j in 0..self.cols {
            let t = q * &self[(b, j)];
            self[(a, j)] += t;
        }
    }

    /// col a += q * col b
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for i in 0..self.rows {
            let t = q * &self[(i, b)];
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, piv);
            for i in rank + 1..m.rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                // Cross-multiply to clear the entry below the pivot.
                let p = m[(rank, col)].clone();
                let e = m[(i, col)].clone();
                for j in 0..m.cols {
                    let t = &p * &m[(i, j)] - &e * &m[(rank, j)];
                    m[(i, j)] = t;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Determinant of a square matrix by Bareiss fraction-free elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(piv) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Int::zero();
                };
                m.swap_rows(k, piv);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = t;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Inverse of a unimodular matrix (|det| = 1); result is integral.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Rational Gauss-Jordan against the identity.
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            Rat::from(self[(i, j)].clone())
                        } else if j - n == i {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&i| !a[i][col].is_zero())
                .expect("unimodular matrix is invertible");
            a.swap(col, piv);
            let p = a[col][col].clone();
            for j in col..2 * n {
                a[col][j] = &a[col][j] / &p;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in col..2 * n {
                    let t = &a[i][j] - &f * &a[col][j];
                    a[i][j] = t;
                }
            }
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let r = &a[i][n + j];
                assert!(r.is_integer(), "unimodular inverse must be integral");
                out[(i, j)] = r.to_integer();
            }
        }
        out
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * M = H`; pivots are positive, entries above a pivot are reduced into
/// `[0, pivot)`, and zero rows are at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // Clear everything below pivot_row in this column by gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if h[(i, col)].abs() < h[(b, col)].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&h[(pivot_row, col)]);
                h.add_row_multiple(i, pivot_row, &q);
                u.add_row_multiple(i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..pivot_row {
            let q = -h[(i, col)].div_floor(&h[(pivot_row, col)]);
            if !q.is_zero() {
                h.add_row_multiple(i, pivot_row, &q);
                u.add_row_multiple(i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(S, U, V)` with `U`, `V` unimodular,
/// `U * M * V = S` diagonal, diagonal entries nonnegative with
/// `d_1 | d_2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let t_max = s.rows.min(s.cols);
    let mut t = 0;
    while t < t_max {
        // Locate the smallest nonzero entry in the trailing submatrix.
        let mut best: Option<(usize, usize)> = None;
        for i in t..s.rows {
            for j in t..s.cols {
                if s[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) => {
                        if s[(i, j)].abs() < s[b].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap_rows(t, bi);
        u.swap_rows(t, bi);
        s.swap_cols(t, bj);
        v.swap_cols(t, bj);

        // Clear row and column t; restart if a remainder survives.
        let mut clean = true;
        for i in t + 1..s.rows {
            if !s[(i, t)].is_zero() {
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..s.cols {
            if !s[(t, j)].is_zero() {
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility d_t | every later entry.
        let mut divides_all = true;
        'scan: for i in t + 1..s.rows {
            for j in t + 1..s.cols {
                if !s[(i, j)].is_multiple_of(&s[(t, t)]) {
                    s.add_row_multiple(t, i, &Int::one());
                    u.add_row_multiple(t, i, &Int::one());
                    divides_all = false;
                    break 'scan;
                }
            }
        }
        if !divides_all {
            continue;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (s, u, v)
}

/// A saturated affine lattice chart for `aff(S) ∩ Z^n`.
///
/// `basis` spans the saturated lattice of the affine hull of the generating
/// points; every lattice point of the hull has integer chart coordinates,
/// obtained as the first `rank` entries of `to_chart * (x - origin)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineLatticeChart {
    pub origin: Vec<Int>,
    pub basis: Vec<Vec<Int>>,
    pub rank: usize,
    /// Unimodular matrix mapping ambient differences to chart coordinates
    /// (rows `rank..` must vanish for points of the affine hull).
    to_chart: IntMatrix,
}

impl AffineLatticeChart {
    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    /// Chart coordinates of an ambient lattice point, if it lies in the
    /// chart's affine hull.
    pub fn coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(x.len(), self.origin.len());
        let diff: Vec<Int> = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        let y = self.to_chart.mul_vec(&diff);
        if y[self.rank..].iter().any(|t| !t.is_zero()) {
            return None;
        }
        Some(y[..self.rank].to_vec())
    }

    /// Rational chart coordinates of an ambient rational point.
    pub fn coords_rat(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(x.len(), self.origin.len());
        let n = self.origin.len();
        let mut y = vec![Rat::zero(); n];
        for (i, yi) in y.iter_mut().enumerate() {
            for j in 0..n {
                let d = &x[j] - Rat::from(self.origin[j].clone());
                *yi += Rat::from(self.to_chart[(i, j)].clone()) * d;
            }
        }
        if y[self.rank..].iter().any(|t| !t.is_zero()) {
            return None;
        }
        y.truncate(self.rank);
        Some(y)
    }

    /// The unimodular ambient-to-chart coordinate matrix.
    pub(crate) fn coordinate_map(&self) -> &IntMatrix {
        &self.to_chart
    }

    /// Ambient point of a chart coordinate vector.
    pub fn point(&self, y: &[Int]) -> Vec<Int> {
        assert_eq!(y.len(), self.rank);
        let mut out = self.origin.clone();
        for (b, c) in self.basis.iter().zip(y) {
            for (o, bi) in out.iter_mut().zip(b) {
                *o += bi * c;
            }
        }
        out
    }
}

/// Chart for the saturated lattice `aff(points) ∩ Z^n`.
pub fn saturated_chart(points: &[Vec<Int>]) -> Result<AffineLatticeChart> {
    let origin = points.first().ok_or(Error::EmptyInput)?.clone();
    let n = origin.len();
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.len() });
        }
    }
    let diffs: Vec<Vec<Int>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&origin).map(|(a, b)| a - b).collect())
        .collect();
    let d = IntMatrix::from_cols(&diffs);
    let (s, u, _v) = if diffs.is_empty() {
        (IntMatrix::zeros(n, 0), IntMatrix::identity(n), IntMatrix::identity(0))
    } else {
        smith_normal_form(&d)
    };
    let rank = (0..s.rows.min(s.cols)).take_while(|&i| !s[(i, i)].is_zero()).count();
    let u_inv = u.unimodular_inverse();
    let basis: Vec<Vec<Int>> = (0..rank).map(|j| u_inv.col(j)).collect();
    Ok(AffineLatticeChart { origin, basis, rank, to_chart: u })
}

/// Index of the affine lattice generated by `points` inside the saturated
/// lattice `aff(points) ∩ Z^n`.
pub fn lattice_index(points: &[Vec<Int>]) -> Result<Int> {
    let chart = saturated_chart(points)?;
    if chart.rank == 0 {
        return Ok(Int::one());
    }
    let coords: Vec<Vec<Int>> = points
        .iter()
        .map(|p| chart.coords(p).expect("generating point lies in its own hull"))
        .collect();
    let diffs: Vec<Vec<Int>> = coords[1..]
        .iter()
        .map(|c| c.iter().zip(&coords[0]).map(|(a, b)| a - b).collect())
        .collect();
    let d = IntMatrix::from_cols(&diffs);
    let (s, _, _) = smith_normal_form(&d);
    let mut index = Int::one();
    for i in 0..chart.rank {
        let di = &s[(i, i)];
        debug_assert!(!di.is_zero(), "difference lattice has full rank in the chart");
        index *= di;
    }
    Ok(index)
}

/// Generalized binomial coefficient `binom(t, k)` via the falling factorial
/// `t (t-1) ... (t-k+1) / k!`; defined for any integer `t`, zero for `k < 0`.
pub fn generalized_binomial(t: &Int, k: i64) -> Int {
    if k < 0 {
        return Int::zero();
    }
    let mut acc = Int::one();
    for i in 0..k {
        acc *= t - Int::from(i);
        acc /= Int::from(i + 1);
    }
    acc
}

/// `binom(t, k)` for machine-sized arguments.
pub fn binom(t: i64, k: i64) -> Int {
    generalized_binomial(&Int::from(t), k)
}

//! Dense integer matrices with exact, unimodular reductions.
//!
//! Entries are `i64`. Determinants and adjugates go through fraction-free
//! (Bareiss) elimination in `i128` and are converted back with an overflow check.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    /// `diag(blocks)` with each block placed on the diagonal.
    pub fn block_diagonal(blocks: &[IntMatrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(self.rows, range.len());
        for (jj, j) in range.enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)];
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Exact division of every entry; `None` if some entry is not divisible.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        if k == 0 || self.data.iter().any(|x| x % k != 0) {
            return None;
        }
        Some(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x / k).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == -self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> i64 {
        let my = self.mul_vec(y);
        x.iter().zip(&my).map(|(a, b)| a * b).sum()
    }

    /// `uᵀ · self · u`: the Gram matrix of the form `self` on the columns of `u`.
    pub fn congruence(&self, u: &IntMatrix) -> IntMatrix {
        &(&u.transpose() * self) * u
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::Malformed("determinant of a non-square matrix".into()));
        }
        narrow(bareiss_det(self.rows, |i, j| self[(i, j)] as i128))
    }

    /// Classical adjugate: `self · adj(self) = det(self) · I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Malformed("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut adj = IntMatrix::zeros(n, n);
        if n == 1 {
            adj[(0, 0)] = 1;
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                // cofactor C_ij: delete row i, column j
                let minor = bareiss_det(n - 1, |r, c| {
                    let rr = if r < i { r } else { r + 1 };
                    let cc = if c < j { c } else { c + 1 };
                    self[(rr, cc)] as i128
                });
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[(j, i)] = narrow(sign * minor)?;
            }
        }
        Ok(adj)
    }

    pub fn rank(&self) -> usize {
        column_echelon(self).rank
    }
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Numerical(format!("integer overflow ({x} exceeds i64)")))
}

fn bareiss_det(n: usize, entry: impl Fn(usize, usize) -> i128) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// `a · u = h` with `u` unimodular and `h` in column echelon form: the first
/// `rank` columns of `h` are nonzero with strictly increasing pivot rows, the rest are zero.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub rank: usize,
}

impl ColumnEchelon {
    /// Saturated basis of the integer kernel, as columns.
    pub fn kernel(&self) -> IntMatrix {
        self.u.columns(self.rank..self.u.cols())
    }

    /// Coordinates of `v` in the kernel basis, or `None` if `v` is not in the kernel.
    pub fn kernel_coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let c = self.u_inv.mul_vec(v);
        if c[..self.rank].iter().any(|&x| x != 0) {
            return None;
        }
        Some(c[self.rank..].to_vec())
    }
}

/// Integer quotient rounded to nearest, keeping remainders small.
fn round_div(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        if (r > 0) == (b > 0) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

pub fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let (rows, cols) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = IntMatrix::identity(cols);
    let mut u_inv = IntMatrix::identity(cols);
    let mut k = 0;
    for r in 0..rows {
        if k == cols {
            break;
        }
        loop {
            // smallest nonzero entry among columns k.. of row r
            let pivot = (k..cols)
                .filter(|&c| h[(r, c)] != 0)
                .min_by_key(|&c| (h[(r, c)].unsigned_abs(), c));
            let Some(p) = pivot else { break };
            h.swap_cols(k, p);
            u.swap_cols(k, p);
            u_inv.swap_rows(k, p);
            let mut done = true;
            for c in k + 1..cols {
                let x = h[(r, c)];
                if x == 0 {
                    continue;
                }
                let q = round_div(x, h[(r, k)]);
                h.add_col(c, k, -q);
                u.add_col(c, k, -q);
                u_inv.add_row(k, c, q);
                if h[(r, c)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, k)] != 0 {
            k += 1;
        }
    }
    ColumnEchelon { h, u, u_inv, rank: k }
}

/// Saturated kernel basis of `a` (columns).
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    column_echelon(a).kernel()
}

/// `p · a · q = diag(s)` with `p`, `q` unimodular and `s₁ | s₂ | …` (nonnegative).
#[derive(Clone, Debug)]
pub struct Smith {
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub diagonal: Vec<i64>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|&&x| x != 0).count()
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&x| x > 1).collect()
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut p = IntMatrix::identity(rows);
    let mut p_inv = IntMatrix::identity(rows);
    let mut q = IntMatrix::identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = m[(i, j)];
                if x != 0 && best.is_none_or(|(b, _, _)| x.unsigned_abs() < b) {
                    best = Some((x.unsigned_abs(), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        p.swap_rows(t, pi);
        p_inv.swap_cols(t, pi);
        m.swap_cols(t, pj);
        q.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            let x = m[(i, t)];
            if x != 0 {
                let k = round_div(x, m[(t, t)]);
                m.add_row(i, t, -k);
                p.add_row(i, t, -k);
                p_inv.add_col(t, i, k);
                clean &= m[(i, t)] == 0;
            }
        }
        for j in t + 1..cols {
            let x = m[(t, j)];
            if x != 0 {
                let k = round_div(x, m[(t, t)]);
                m.add_col(j, t, -k);
                q.add_col(j, t, -k);
                clean &= m[(t, j)] == 0;
            }
        }
        if !clean {
            continue;
        }
        let d = m[(t, t)];
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[(i, j)] % d != 0));
        if let Some(i) = offender {
            m.add_row(t, i, 1);
            p.add_row(t, i, 1);
            p_inv.add_col(i, t, -1);
            continue;
        }
        if d < 0 {
            m.negate_row(t);
            p.negate_row(t);
            p_inv.negate_col(t);
        }
        t += 1;
    }
    let diagonal = (0..n).map(|i| m[(i, i)]).collect();
    Smith { p, p_inv, q, diagonal }
}

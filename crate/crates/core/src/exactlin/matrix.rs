use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::{LinError, Q};

/// A dense matrix of exact rationals, stored row-major.
///
/// Shapes with a zero dimension are legal and stand for maps to or from the
/// zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self, LinError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinError::Ragged);
        }
        Ok(QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Like [`from_rows`](Self::from_rows) but with the shape given
    /// explicitly, so that `0 x n` and `n x 0` matrices survive a JSON
    /// round trip (both serialize as `[]` or `[[], ...]`).
    pub fn from_rows_shaped(rows: Vec<Vec<Q>>, nrows: usize, ncols: usize) -> Result<Self, LinError> {
        if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
            return Err(LinError::Shape {
                expected: (nrows, ncols),
                found: (rows.len(), rows.first().map_or(0, Vec::len)),
            });
        }
        Ok(QMat { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries, for tests and generators.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| Q::from_int(x))).collect();
        QMat { rows: rows.len(), cols: C, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Matrix product; skips zero entries of `self`, which dominate the
    /// block-sparse matrices produced by transport.
    pub fn mul(&self, rhs: &QMat) -> Result<QMat, LinError> {
        if self.cols != rhs.rows {
            return Err(LinError::Mismatch { left: self.shape(), right: rhs.shape(), op: "mul" });
        }
        let mut out = QMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = o.add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for call sites where shapes are already known to agree.
    pub fn dot(&self, rhs: &QMat) -> QMat {
        self.mul(rhs).expect("matrix shapes agree")
    }

    pub fn add(&self, rhs: &QMat) -> Result<QMat, LinError> {
        if self.shape() != rhs.shape() {
            return Err(LinError::Mismatch { left: self.shape(), right: rhs.shape(), op: "add" });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(QMat { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &QMat) -> Result<QMat, LinError> {
        if self.shape() != rhs.shape() {
            return Err(LinError::Mismatch { left: self.shape(), right: rhs.shape(), op: "sub" });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(QMat { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, c: &Q) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// `1 - self` for a square matrix.
    pub fn complement(&self) -> Result<QMat, LinError> {
        if !self.is_square() {
            return Err(LinError::NotSquare(self.shape()));
        }
        QMat::identity(self.rows).sub(self)
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &self.dot(self) == self
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> QMat {
        QMat::from_fn(rows.len(), cols.len(), |i, j| self[(rows.start + i, cols.start + j)].clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &QMat) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Reduced row echelon form together with the pivot column of each
    /// non-zero row.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for i in 0..m.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let factor = m[(i, col)].clone();
                for j in col..m.cols {
                    if m[(row, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&factor * &m[(row, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
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
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<QMat, LinError> {
        if !self.is_square() {
            return Err(LinError::NotSquare(self.shape()));
        }
        let n = self.rows;
        let aug = QMat::block(&[vec![self.clone(), QMat::identity(n)]])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p >= n) {
            return Err(LinError::Singular);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// Assembles a grid of blocks. Every block in a grid row must have the
    /// same number of rows and every block in a grid column the same number
    /// of columns; empty blocks take part in this bookkeeping.
    pub fn block(grid: &[Vec<QMat>]) -> Result<QMat, LinError> {
        let Some(first) = grid.first() else {
            return Ok(QMat::zeros(0, 0));
        };
        let ncols = first.len();
        if grid.iter().any(|r| r.len() != ncols) {
            return Err(LinError::Ragged);
        }
        let heights: Vec<usize> = grid.iter().map(|r| r.first().map_or(0, QMat::rows)).collect();
        let widths: Vec<usize> = (0..ncols).map(|j| grid[0][j].cols).collect();
        for (i, r) in grid.iter().enumerate() {
            for (j, b) in r.iter().enumerate() {
                if b.rows != heights[i] || b.cols != widths[j] {
                    return Err(LinError::Shape { expected: (heights[i], widths[j]), found: b.shape() });
                }
            }
        }
        let mut out = QMat::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (i, r) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (j, b) in r.iter().enumerate() {
                out.set_block(r0, c0, b);
                c0 += widths[j];
            }
            r0 += heights[i];
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &QMat) -> QMat {
        let mut out = QMat::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Block diagonal matrix of the given blocks.
    pub fn diagonal_sum<'a>(blocks: impl IntoIterator<Item = &'a QMat>) -> QMat {
        let blocks: Vec<&QMat> = blocks.into_iter().collect();
        let mut out = QMat::zeros(blocks.iter().map(|b| b.rows).sum(), blocks.iter().map(|b| b.cols).sum());
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn hstack(&self, other: &QMat) -> Result<QMat, LinError> {
        QMat::block(&[vec![self.clone(), other.clone()]])
    }

    pub fn vstack(&self, other: &QMat) -> Result<QMat, LinError> {
        QMat::block(&[vec![self.clone()], vec![other.clone()]])
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMat{}x{}", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Serializes as an array of rows of `"p/q"` strings. The shape is not
/// recorded, so `0 x n` matrices need their shape from context; see
/// [`QMat::from_rows_shaped`].
impl Serialize for QMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Q>>::deserialize(d)?;
        QMat::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

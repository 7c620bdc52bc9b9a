//! Sparse integer matrices stored column-major.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[inline]
pub(crate) fn add_i(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in addition")
}

#[inline]
pub(crate) fn mul_i(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in multiplication")
}

/// `(-1)^k` for any integer `k`.
#[inline]
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A `rows × cols` integer matrix. Each column is a list of `(row, value)` pairs
/// sorted by row with no explicit zeros, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        if self.rows <= 12 && self.cols <= 12 {
            f.debug_list().entries(self.to_dense()).finish()
        } else {
            write!(f, "nnz={}", self.nnz())
        }
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let data = (0..n).map(|i| if c == 0 { Vec::new() } else { vec![(i, c)] }).collect();
        Matrix { rows: n, cols: n, data }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let data = entries.iter().enumerate().map(|(i, &c)| if c == 0 { Vec::new() } else { vec![(i, c)] }).collect();
        Matrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, i64)>>(rows: usize, cols: usize, it: I) -> Self {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in it {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            if v != 0 {
                let e = acc[c].entry(r).or_insert(0);
                *e = add_i(*e, v);
            }
        }
        let data = acc.into_iter().map(|m| m.into_iter().filter(|&(_, v)| v != 0).collect()).collect();
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from sorted-or-unsorted column lists.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        Self::from_triplets(rows, cols, columns.into_iter().enumerate().flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))))
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_triplets(rows, cols, (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c, entries[r * cols + c]))))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_triplets(r, c, rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), c, "ragged rows");
            row.iter().enumerate().map(move |(j, &v)| (i, j, v))
        }))
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

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn col(&self, c: usize) -> &[(usize, i64)] {
        &self.data[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        match self.data[c].binary_search_by_key(&r, |&(i, _)| i) {
            Ok(k) => self.data[c][k].1,
            Err(_) => 0,
        }
    }

    /// All nonzero entries in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.data.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut data: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for &(r, v) in col {
                data[r].push((c, v));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn scale(&self, k: i64) -> Matrix {
        if k == 0 {
            return Matrix::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|col| col.iter().map(|&(r, v)| (r, mul_i(v, k))).collect()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(-1)
    }

    fn merge(a: &[(usize, i64)], b: &[(usize, i64)], kb: i64) -> Vec<(usize, i64)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, mul_i(kb, b[j].1)));
                j += 1;
            } else {
                let v = add_i(a[i].1, mul_i(kb, b[j].1));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Matrix, k: i64) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in addition");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| Self::merge(a, b, k)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add_scaled(other, -1)
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product {:?} * {:?}", self.shape(), other.shape());
        let mut acc: Vec<i64> = vec![0; self.rows];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(other.cols);
        for ocol in &other.data {
            for &(k, b) in ocol {
                for &(r, a) in &self.data[k] {
                    if acc[r] == 0 {
                        touched.push(r);
                    }
                    acc[r] = add_i(acc[r], mul_i(a, b));
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut col = Vec::with_capacity(touched.len());
            for &r in &touched {
                if acc[r] != 0 {
                    col.push((r, acc[r]));
                }
                acc[r] = 0;
            }
            touched.clear();
            data.push(col);
        }
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![0; self.rows];
        for (c, col) in self.data.iter().enumerate() {
            if x[c] == 0 {
                continue;
            }
            for &(r, v) in col {
                out[r] = add_i(out[r], mul_i(v, x[c]));
            }
        }
        out
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            pos[r] = i;
        }
        let data = cols
            .iter()
            .map(|&c| {
                let mut col: Vec<(usize, i64)> = self.data[c].iter().filter(|&&(r, _)| pos[r] != usize::MAX).map(|&(r, v)| (pos[r], v)).collect();
                col.sort_unstable_by_key(|&(r, _)| r);
                col
            })
            .collect();
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Places `self` into a `rows × cols` matrix, sending row `i` to `row_map[i]`
    /// and column `j` to `col_map[j]`.
    pub fn embed(&self, rows: usize, cols: usize, row_map: &[usize], col_map: &[usize]) -> Matrix {
        assert_eq!(row_map.len(), self.rows);
        assert_eq!(col_map.len(), self.cols);
        Matrix::from_triplets(rows, cols, self.triplets().map(|(r, c, v)| (row_map[r], col_map[c], v)))
    }

    /// Multiplies column `j` by `signs[j]`.
    pub fn scale_cols(&self, signs: &[i64]) -> Matrix {
        assert_eq!(signs.len(), self.cols);
        let data = self.data.iter().zip(signs).map(|(col, &s)| if s == 0 { Vec::new() } else { col.iter().map(|&(r, v)| (r, mul_i(v, s))).collect() }).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Multiplies row `i` by `signs[i]`.
    pub fn scale_rows(&self, signs: &[i64]) -> Matrix {
        assert_eq!(signs.len(), self.rows);
        let data = self.data.iter().map(|col| col.iter().filter(|&&(r, _)| signs[r] != 0).map(|&(r, v)| (r, mul_i(v, signs[r]))).collect()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Block matrix from a grid of optional blocks; `row_sizes`/`col_sizes` give the
    /// block dimensions.
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[(usize, usize, &Matrix)]) -> Matrix {
        let mut roff = vec![0; row_sizes.len() + 1];
        for i in 0..row_sizes.len() {
            roff[i + 1] = roff[i] + row_sizes[i];
        }
        let mut coff = vec![0; col_sizes.len() + 1];
        for j in 0..col_sizes.len() {
            coff[j + 1] = coff[j] + col_sizes[j];
        }
        let mut trip = Vec::new();
        for &(bi, bj, m) in blocks {
            assert_eq!(m.shape(), (row_sizes[bi], col_sizes[bj]), "block ({bi},{bj}) has wrong shape");
            trip.extend(m.triplets().map(|(r, c, v)| (r + roff[bi], c + coff[bj], v)));
        }
        Matrix::from_triplets(roff[row_sizes.len()], coff[col_sizes.len()], trip)
    }

    pub fn max_abs(&self) -> i64 {
        self.triplets().map(|(_, _, v)| v.abs()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_rows(&[vec![1, 2], vec![0, -1], vec![3, 0]]);
        let b = Matrix::from_rows(&[vec![2, 0, 1], vec![1, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab.to_dense(), vec![vec![4, 2, 1], vec![-1, -1, 0], vec![6, 0, 3]]);
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
    }

    #[test]
    fn cancellation_leaves_no_explicit_zero() {
        let a = Matrix::from_rows(&[vec![1, -1]]);
        let b = Matrix::from_rows(&[vec![1], vec![1]]);
        let z = a.mul(&b);
        assert!(z.is_zero());
        assert_eq!(z, Matrix::zeros(1, 1));
        assert_eq!(a.sub(&a), Matrix::zeros(1, 2));
    }

    #[test]
    fn select_and_embed_round_trip() {
        let a = Matrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let s = a.select(&[1], &[2, 0]);
        assert_eq!(s.to_dense(), vec![vec![6, 4]]);
        let e = s.embed(2, 3, &[1], &[2, 0]);
        assert_eq!(e.to_dense(), vec![vec![0, 0, 0], vec![4, 0, 6]]);
    }

    #[test]
    fn block_assembly() {
        let i = Matrix::identity(1);
        let m = Matrix::block(&[1, 1], &[1, 1], &[(0, 1, &i), (1, 0, &i.neg())]);
        assert_eq!(m.to_dense(), vec![vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        let a = Matrix::from_rows(&[vec![i64::MAX]]);
        let _ = a.mul(&Matrix::scalar(1, 2));
    }
}

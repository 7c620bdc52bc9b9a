//! Integer elimination: Smith normal form, invariant factors and linear solving.
//!
//! Sparse inputs are first reduced with unit pivots chosen by a Markowitz-style
//! rule (short columns first, then short rows). Unit pivots never change the
//! invariant factors and never introduce fractions, so only the small remainder
//! without unit entries goes through the dense Smith normal form.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::matrix::{add_i, mul_i, Matrix};

/// Result of [`smith_normal_form`]: `s = u * m * v` with `u`, `v` unimodular and `s`
/// diagonal with each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
}

impl Snf {
    /// Nonzero diagonal entries of `s`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i)).filter(|&x| x != 0).collect()
    }
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in Smith normal form")
}

struct Dense {
    m: usize,
    n: usize,
    a: Vec<Vec<i128>>,
    u: Option<Vec<Vec<i128>>>,
    v: Option<Vec<Vec<i128>>>,
}

impl Dense {
    fn new(a: Vec<Vec<i128>>, m: usize, n: usize, transforms: bool) -> Self {
        let ident = |k: usize| (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect();
        Dense { m, n, a, u: transforms.then(|| ident(m)), v: transforms.then(|| ident(n)) }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: i128) {
        if k == 0 {
            return;
        }
        for c in 0..self.n {
            let t = self.a[j][c];
            self.a[i][c] += k * t;
        }
        if let Some(u) = &mut self.u {
            for c in 0..self.m {
                let t = u[j][c];
                u[i][c] += k * t;
            }
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: i128) {
        if k == 0 {
            return;
        }
        for r in 0..self.m {
            let t = self.a[r][j];
            self.a[r][i] += k * t;
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let t = row[j];
                row[i] += k * t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -*x;
            }
        }
    }

    fn reduce(&mut self) {
        let k = self.m.min(self.n);
        for t in 0..k {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..self.m {
                    for j in t..self.n {
                        let x = self.a[i][j];
                        if x != 0 && best.map_or(true, |(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else { return };
                self.swap_rows(t, bi);
                self.swap_cols(t, bj);
                let p = self.a[t][t];
                let mut clean = true;
                for i in t + 1..self.m {
                    let q = self.a[i][t].div_euclid(p);
                    self.add_row(i, t, -q);
                    if self.a[i][t] != 0 {
                        clean = false;
                    }
                }
                for j in t + 1..self.n {
                    let q = self.a[t][j].div_euclid(p);
                    self.add_col(j, t, -q);
                    if self.a[t][j] != 0 {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let mut bad = None;
                'outer: for i in t + 1..self.m {
                    for j in t + 1..self.n {
                        if self.a[i][j] % p != 0 {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad {
                    Some(i) => self.add_row(t, i, 1),
                    None => break,
                }
            }
            if self.a[t][t] < 0 {
                self.negate_row(t);
            }
        }
    }
}

fn dense_of(m: &Matrix) -> Vec<Vec<i128>> {
    let mut a = vec![vec![0i128; m.cols()]; m.rows()];
    for (r, c, v) in m.triplets() {
        a[r][c] = i128::from(v);
    }
    a
}

fn matrix_of(a: &[Vec<i128>], rows: usize, cols: usize) -> Matrix {
    Matrix::from_triplets(rows, cols, (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c, to_i64(a[r][c])))))
}

/// Dense Smith normal form with transforms.
pub fn smith_normal_form(m: &Matrix) -> Snf {
    let (rows, cols) = m.shape();
    let mut d = Dense::new(dense_of(m), rows, cols, true);
    d.reduce();
    Snf {
        u: matrix_of(d.u.as_ref().unwrap(), rows, rows),
        s: matrix_of(&d.a, rows, cols),
        v: matrix_of(d.v.as_ref().unwrap(), cols, cols),
    }
}

fn dense_invariants(a: Vec<Vec<i128>>, m: usize, n: usize) -> Vec<i64> {
    let mut d = Dense::new(a, m, n, false);
    d.reduce();
    (0..m.min(n)).map(|i| d.a[i][i]).filter(|&x| x != 0).map(to_i64).collect()
}

/// Sparse row-major working copy used by the unit-pivot phase.
struct Sparse {
    rows: Vec<Vec<(usize, i64)>>,
    rhs: Option<Vec<i64>>,
    col_rows: Vec<BTreeSet<usize>>,
    col_len: Vec<usize>,
    buckets: BTreeMap<usize, BTreeSet<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

struct Pivot {
    col: usize,
    unit: i64,
    row: Vec<(usize, i64)>,
    rhs: i64,
}

impl Sparse {
    fn new(m: &Matrix, rhs: Option<&[i64]>) -> Self {
        let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); m.rows()];
        let mut col_rows = vec![BTreeSet::new(); m.cols()];
        for (r, c, v) in m.triplets() {
            rows[r].push((c, v));
            col_rows[c].insert(r);
        }
        let col_len: Vec<usize> = col_rows.iter().map(BTreeSet::len).collect();
        let mut buckets: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (c, &l) in col_len.iter().enumerate() {
            if l > 0 {
                buckets.entry(l).or_default().insert(c);
            }
        }
        Sparse {
            rows,
            rhs: rhs.map(<[i64]>::to_vec),
            col_rows,
            col_len,
            buckets,
            row_alive: vec![true; m.rows()],
            col_alive: vec![true; m.cols()],
        }
    }

    fn entry(&self, r: usize, c: usize) -> i64 {
        match self.rows[r].binary_search_by_key(&c, |&(k, _)| k) {
            Ok(i) => self.rows[r][i].1,
            Err(_) => 0,
        }
    }

    fn relen(&mut self, c: usize) {
        let old = self.col_len[c];
        let new = self.col_rows[c].len();
        if old == new {
            return;
        }
        if old > 0 {
            if let Some(b) = self.buckets.get_mut(&old) {
                b.remove(&c);
                if b.is_empty() {
                    self.buckets.remove(&old);
                }
            }
        }
        if new > 0 && self.col_alive[c] {
            self.buckets.entry(new).or_default().insert(c);
        }
        self.col_len[c] = new;
    }

    fn find_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        let mut examined = 0usize;
        for (&len, cols) in &self.buckets {
            for &c in cols {
                for &r in &self.col_rows[c] {
                    let v = self.entry(r, c);
                    if v == 1 || v == -1 {
                        let cost = (len - 1) * (self.rows[r].len() - 1);
                        if best.map_or(true, |(_, _, b)| cost < b) {
                            best = Some((r, c, cost));
                            if cost == 0 {
                                return Some((r, c));
                            }
                        }
                    }
                }
                examined += 1;
                if best.is_some() && examined >= 32 {
                    return best.map(|(r, c, _)| (r, c));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn eliminate(&mut self, r: usize, c: usize) -> Pivot {
        let unit = self.entry(r, c);
        let prow = self.rows[r].clone();
        let prhs = self.rhs.as_ref().map_or(0, |b| b[r]);
        let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&x| x != r).collect();
        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for r2 in others {
            let f = mul_i(self.entry(r2, c), unit);
            let old = core::mem::take(&mut self.rows[r2]);
            let mut new = Vec::with_capacity(old.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < prow.len() {
                if j == prow.len() || (i < old.len() && old[i].0 < prow[j].0) {
                    new.push(old[i]);
                    i += 1;
                } else if i == old.len() || prow[j].0 < old[i].0 {
                    let col = prow[j].0;
                    new.push((col, mul_i(-f, prow[j].1)));
                    self.col_rows[col].insert(r2);
                    touched.insert(col);
                    j += 1;
                } else {
                    let col = old[i].0;
                    let v = add_i(old[i].1, mul_i(-f, prow[j].1));
                    if v != 0 {
                        new.push((col, v));
                    } else {
                        self.col_rows[col].remove(&r2);
                        touched.insert(col);
                    }
                    i += 1;
                    j += 1;
                }
            }
            self.rows[r2] = new;
            if let Some(b) = &mut self.rhs {
                b[r2] = add_i(b[r2], mul_i(-f, prhs));
            }
        }
        for &(col, _) in &prow {
            self.col_rows[col].remove(&r);
            touched.insert(col);
        }
        self.rows[r].clear();
        self.row_alive[r] = false;
        self.col_alive[c] = false;
        for col in touched {
            self.relen(col);
        }
        let old = self.col_len[c];
        if old > 0 {
            if let Some(b) = self.buckets.get_mut(&old) {
                b.remove(&c);
                if b.is_empty() {
                    self.buckets.remove(&old);
                }
            }
        }
        Pivot { col: c, unit, row: prow, rhs: prhs }
    }

    fn run(&mut self) -> Vec<Pivot> {
        let mut pivots = Vec::new();
        while let Some((r, c)) = self.find_pivot() {
            pivots.push(self.eliminate(r, c));
        }
        pivots
    }

    /// Remaining nonempty rows and live columns as a dense block.
    fn remainder(&self) -> (Vec<usize>, Vec<usize>, Vec<Vec<i128>>) {
        let rows: Vec<usize> = (0..self.rows.len()).filter(|&r| self.row_alive[r] && !self.rows[r].is_empty()).collect();
        let mut cols: Vec<usize> = rows.iter().flat_map(|&r| self.rows[r].iter().map(|&(c, _)| c)).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut pos = BTreeMap::new();
        for (i, &c) in cols.iter().enumerate() {
            pos.insert(c, i);
        }
        let mut a = vec![vec![0i128; cols.len()]; rows.len()];
        for (i, &r) in rows.iter().enumerate() {
            for &(c, v) in &self.rows[r] {
                a[i][pos[&c]] = i128::from(v);
            }
        }
        (rows, cols, a)
    }
}

/// Nonzero invariant factors of `m`, in divisibility order.
pub fn invariant_factors(m: &Matrix) -> Vec<i64> {
    let mut s = Sparse::new(m, None);
    let pivots = s.run();
    let (rows, cols, a) = s.remainder();
    let mut out = vec![1; pivots.len()];
    out.extend(dense_invariants(a, rows.len(), cols.len()));
    out.sort_unstable();
    out
}

pub fn rank(m: &Matrix) -> usize {
    invariant_factors(m).len()
}

/// Solves `m x = b` over the integers. Returns `None` if no integer solution exists.
pub fn solve(m: &Matrix, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    let mut s = Sparse::new(m, Some(b));
    let pivots = s.run();
    let rhs = s.rhs.clone().unwrap();
    for r in 0..m.rows() {
        if s.row_alive[r] && s.rows[r].is_empty() && rhs[r] != 0 {
            return None;
        }
    }
    let (rows, cols, a) = s.remainder();
    let mut x = vec![0i64; m.cols()];
    if !rows.is_empty() {
        let (mr, nc) = (rows.len(), cols.len());
        let mut d = Dense::new(a, mr, nc, true);
        d.reduce();
        let u = d.u.as_ref().unwrap();
        let ub: Vec<i128> = (0..mr).map(|i| rows.iter().enumerate().map(|(k, &r)| u[i][k] * i128::from(rhs[r])).sum()).collect();
        let mut y = vec![0i128; nc];
        for i in 0..mr {
            let sii = if i < nc { d.a[i][i] } else { 0 };
            if sii == 0 {
                if ub[i] != 0 {
                    return None;
                }
            } else {
                if ub[i] % sii != 0 {
                    return None;
                }
                y[i] = ub[i] / sii;
            }
        }
        let v = d.v.as_ref().unwrap();
        for (j, &c) in cols.iter().enumerate() {
            let val: i128 = (0..nc).map(|k| v[j][k] * y[k]).sum();
            x[c] = to_i64(val);
        }
    }
    for p in pivots.iter().rev() {
        let mut acc = p.rhs;
        for &(k, v) in &p.row {
            if k != p.col {
                acc = add_i(acc, mul_i(-v, x[k]));
            }
        }
        x[p.col] = mul_i(acc, p.unit);
    }
    debug_assert_eq!(m.mul_vec(&x), b);
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_hand_example() {
        // [[2,4],[6,8]]: gcd of entries 2, det -8, so invariant factors (2, 4).
        let m = Matrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.invariant_factors(), vec![2, 4]);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
        assert_eq!(invariant_factors(&m), vec![2, 4]);
    }

    #[test]
    fn snf_identity_and_zero() {
        let i = Matrix::identity(3);
        let snf = smith_normal_form(&i);
        assert_eq!(snf.s, i);
        assert_eq!(snf.u.mul(&i).mul(&snf.v), i);
        let z = Matrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).s, z);
        assert!(invariant_factors(&z).is_empty());
    }

    #[test]
    fn invariants_mix_sparse_and_dense() {
        // diag(1, 2, 6) hidden by unimodular mixing
        let m = Matrix::from_rows(&[vec![1, 1, 0], vec![0, 2, 2], vec![1, 3, 8]]);
        assert_eq!(invariant_factors(&m), smith_normal_form(&m).invariant_factors());
        let f = invariant_factors(&m);
        assert_eq!(f.iter().product::<i64>().abs(), 12);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve(&m, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve(&m, &[1, 0]), None);
        let n = Matrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(solve(&n, &[1, 3]).is_none());
        let x = solve(&n, &[3, 6]).unwrap();
        assert_eq!(n.mul_vec(&x), vec![3, 6]);
    }

    #[test]
    fn solve_underdetermined_with_gcd() {
        let m = Matrix::from_rows(&[vec![4, 6]]);
        let x = solve(&m, &[2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![2]);
        assert!(solve(&m, &[3]).is_none());
    }
}

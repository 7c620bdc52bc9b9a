//! Integral symmetric forms: fixtures and the exact signature.

use alloc::vec;
use alloc::vec::Vec;

use crate::chain::Matrix;
use crate::error::{Error, ErrorKind, Result};

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Q {
    n: i128,
    d: i128,
}

impl Q {
    fn int(n: i64) -> Q {
        Q { n: n as i128, d: 1 }
    }

    fn new(n: i128, d: i128) -> Q {
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Q { n: s * n / g, d: s * d / g }
    }

    fn is_zero(self) -> bool {
        self.n == 0
    }

    fn add(self, o: Q) -> Q {
        Q::new(self.n.checked_mul(o.d).and_then(|a| o.n.checked_mul(self.d).and_then(|b| a.checked_add(b))).expect("rational overflow"), self.d.checked_mul(o.d).expect("rational overflow"))
    }

    fn mul(self, o: Q) -> Q {
        Q::new(self.n.checked_mul(o.n).expect("rational overflow"), self.d.checked_mul(o.d).expect("rational overflow"))
    }

    fn neg(self) -> Q {
        Q { n: -self.n, d: self.d }
    }

    fn inv(self) -> Q {
        Q::new(self.d, self.n)
    }
}

/// Numbers of positive, negative and zero entries after diagonalising by congruence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Sylvester inertia of a symmetric integer matrix, by symmetric elimination over `Q`.
pub fn inertia(m: &Matrix) -> Result<Inertia> {
    if m.rows() != m.cols() || m.transpose() != *m {
        return Err(Error::new(ErrorKind::ShapeMismatch, "form must be square and symmetric"));
    }
    let n = m.rows();
    let mut a: Vec<Vec<Q>> = m.to_dense().into_iter().map(|r| r.into_iter().map(Q::int).collect()).collect();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // e_i += e_j makes the diagonal entry 2 a_ij
                for c in 0..n {
                    let v = a[j][c];
                    a[i][c] = a[i][c].add(v);
                }
                for row in a.iter_mut() {
                    let v = row[j];
                    row[i] = row[i].add(v);
                }
            } else {
                out.zero += 1;
                continue;
            }
        }
        let p = a[i][i];
        if p.n > 0 {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        let pinv = p.inv();
        for j in i + 1..n {
            let f = a[j][i].mul(pinv);
            if f.is_zero() {
                continue;
            }
            for c in i..n {
                let v = a[i][c].mul(f).neg();
                a[j][c] = a[j][c].add(v);
            }
            for r in i..n {
                let v = a[r][i].mul(f).neg();
                a[r][j] = a[r][j].add(v);
            }
        }
    }
    Ok(out)
}

pub fn signature(m: &Matrix) -> Result<i64> {
    inertia(m).map(|i| i.signature())
}

/// The Cartan matrix of `E_8`, a positive definite even unimodular form.
pub fn e8() -> Matrix {
    let mut rows = vec![vec![0i64; 8]; 8];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    for (a, b) in edges {
        rows[a][b] = -1;
        rows[b][a] = -1;
    }
    Matrix::from_rows(&rows)
}

/// A quadratic refinement `q` of `E_8`: upper triangular with `q + q^t = E_8`.
pub fn e8_refinement() -> Matrix {
    let e = e8();
    Matrix::from_triplets(8, 8, e.triplets().filter(|&(i, j, _)| i <= j).map(|(i, j, v)| (i, j, if i == j { v / 2 } else { v })))
}

pub fn hyperbolic() -> Matrix {
    Matrix::from_rows(&[vec![0, 1], vec![1, 0]])
}

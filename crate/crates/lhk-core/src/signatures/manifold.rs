//! Manifold promises on ball complexes and their fundamental classes.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::BallComplex;
use crate::error::{Error, ErrorKind, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Promise {
    ClosedOrientable,
    WithBoundary,
}

impl Promise {
    pub fn name(self) -> &'static str {
        match self {
            Promise::ClosedOrientable => "closed-orientable",
            Promise::WithBoundary => "with-boundary",
        }
    }
}

/// A ball complex promised to be a PL manifold, possibly with boundary. The
/// combinatorial part of the promise is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldComplex {
    complex: Arc<BallComplex>,
    promise: Promise,
    boundary: Vec<usize>,
}

impl ManifoldComplex {
    pub fn closed(complex: Arc<BallComplex>) -> Result<Self> {
        Self::new(complex, Promise::ClosedOrientable, None)
    }

    /// With boundary; the boundary defaults to the one-sided codimension-one cells
    /// and their faces.
    pub fn with_boundary(complex: Arc<BallComplex>, declared: Option<Vec<usize>>) -> Result<Self> {
        Self::new(complex, Promise::WithBoundary, declared)
    }

    pub fn new(complex: Arc<BallComplex>, promise: Promise, declared: Option<Vec<usize>>) -> Result<Self> {
        let n = complex.dim();
        let x = &*complex;
        for c in 0..x.len() {
            if x.cell_dim(c) < n && !x.star(c).iter().any(|&t| x.cell_dim(t) == n) {
                return Err(Error::new(ErrorKind::NotPseudomanifold, format!("cell {:?} is not a face of a top cell", x.id(c))));
            }
        }
        if n > 0 {
            for &f in x.cells_of_dim(n - 1) {
                let k = x.cofaces(f).iter().filter(|&&(c, _)| x.cell_dim(c) == n).count();
                let ok = match promise {
                    Promise::ClosedOrientable => k == 2,
                    Promise::WithBoundary => k == 1 || k == 2,
                };
                if !ok {
                    return Err(Error::new(ErrorKind::NotPseudomanifold, format!("cell {:?} is a face of {k} top cells", x.id(f))));
                }
            }
        }
        let found = x.boundary_subcomplex();
        let boundary = match (promise, declared) {
            (Promise::ClosedOrientable, Some(d)) if !d.is_empty() => {
                return Err(Error::new(ErrorKind::NotPseudomanifold, "a closed manifold has no boundary cells"));
            }
            (Promise::WithBoundary, Some(d)) => {
                let d: BTreeSet<usize> = d.into_iter().collect();
                if d != found.iter().copied().collect() {
                    return Err(Error::new(ErrorKind::NotPseudomanifold, "declared boundary differs from the one-sided cells"));
                }
                found
            }
            _ => found,
        };
        Ok(ManifoldComplex { complex, promise, boundary })
    }

    pub fn complex(&self) -> &Arc<BallComplex> {
        &self.complex
    }

    pub fn promise(&self) -> Promise {
        self.promise
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// Boundary cells in index order.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn in_boundary(&self, c: usize) -> bool {
        self.boundary.binary_search(&c).is_ok()
    }
}

/// A fundamental class: `±1` on every top cell, in the basis order of the top
/// degree, found by propagating orientations across codimension-one cells. Each
/// connected piece is seeded with `+1` at its first top cell.
pub fn fundamental_class(m: &ManifoldComplex) -> Result<Vec<i64>> {
    let x = &**m.complex();
    let n = m.dim();
    let tops = x.cells_of_dim(n);
    let mut z = vec![0i64; tops.len()];
    if n == 0 {
        return Ok(vec![1; tops.len()]);
    }
    // top cells adjacent through each codimension-one cell, with incidences
    let mut adj: Vec<Vec<(usize, i64, i64)>> = vec![Vec::new(); tops.len()];
    for &f in x.cells_of_dim(n - 1) {
        let up: Vec<(usize, i64)> = x.cofaces(f).iter().filter(|&&(c, _)| x.cell_dim(c) == n).map(|&(c, e)| (x.position(c), e)).collect();
        if up.len() == 2 {
            let ((a, ea), (b, eb)) = (up[0], up[1]);
            adj[a].push((b, ea, eb));
            adj[b].push((a, eb, ea));
        }
    }
    for seed in 0..tops.len() {
        if z[seed] != 0 {
            continue;
        }
        z[seed] = 1;
        let mut queue = VecDeque::from([seed]);
        while let Some(a) = queue.pop_front() {
            for &(b, ea, eb) in &adj[a] {
                let want = -z[a] * ea * eb;
                if z[b] == 0 {
                    z[b] = want;
                    queue.push_back(b);
                } else if z[b] != want {
                    return Err(Error::new(ErrorKind::NotOrientable, format!("orientations of {:?} and {:?} disagree", x.id(tops[a]), x.id(tops[b]))));
                }
            }
        }
    }
    let d = x.chain_complex().d(n as i32).mul_vec(&z);
    let faces = x.cells_of_dim(n - 1);
    if let Some(i) = (0..d.len()).find(|&i| d[i] != 0 && !m.in_boundary(faces[i])) {
        return Err(Error::new(ErrorKind::NotOrientable, format!("class has boundary at {:?}", x.id(faces[i]))));
    }
    Ok(z)
}

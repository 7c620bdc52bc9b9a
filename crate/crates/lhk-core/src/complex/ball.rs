//! Ball complexes given by signed codimension-one incidence data.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::chain::{ChainComplex, HomologyGroup, Matrix};
use crate::error::{Error, ErrorKind, Result};

/// A cell as read from input: faces are referenced by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCell {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<(String, i64)>,
}

impl RawCell {
    pub fn new(id: impl Into<String>, dim: usize, faces: &[(&str, i64)]) -> Self {
        RawCell { id: id.into(), dim, faces: faces.iter().map(|(f, s)| (String::from(*f), *s)).collect() }
    }
}

/// A validated cell; faces are indices into the owning complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<(usize, i64)>,
}

/// A finite regular cell complex whose cell boundaries have the homology of spheres.
///
/// Cells are stored sorted by dimension (stable in input order); a cell's index is
/// its position in that order and the cellular basis in degree `n` is the `n`-cells
/// in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallComplex {
    cells: Vec<Cell>,
    index: BTreeMap<String, usize>,
    cofaces: Vec<Vec<(usize, i64)>>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    by_dim: Vec<Vec<usize>>,
    pos: Vec<usize>,
}

impl BallComplex {
    /// Validates raw cells, returning every violation found.
    pub fn validate(raw: &[RawCell]) -> core::result::Result<BallComplex, Vec<Error>> {
        let mut errs = Vec::new();
        let mut seen = BTreeSet::new();
        for c in raw {
            if !seen.insert(c.id.as_str()) {
                errs.push(Error::new(ErrorKind::DuplicateId, format!("cell id {:?} appears more than once", c.id)));
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| raw[i].dim);
        let index: BTreeMap<String, usize> = order.iter().enumerate().map(|(k, &i)| (raw[i].id.clone(), k)).collect();
        let mut cells = Vec::with_capacity(raw.len());
        for &i in &order {
            let c = &raw[i];
            let mut faces: BTreeMap<usize, i64> = BTreeMap::new();
            if c.dim == 0 && !c.faces.is_empty() {
                errs.push(Error::new(ErrorKind::DimMismatch, format!("0-cell {:?} lists faces", c.id)));
            }
            for (f, s) in &c.faces {
                match index.get(f) {
                    None => errs.push(Error::new(ErrorKind::DanglingFace, format!("cell {:?} lists unknown face {:?}", c.id, f))),
                    Some(&k) => {
                        let fd = raw[order[k]].dim;
                        if fd + 1 != c.dim {
                            errs.push(Error::new(ErrorKind::DimMismatch, format!("face {:?} of {}-cell {:?} has dimension {}", f, c.dim, c.id, fd)));
                        } else if *s != 1 && *s != -1 {
                            errs.push(Error::new(ErrorKind::DimMismatch, format!("incidence {} of {:?} in {:?} is not ±1", s, f, c.id)));
                        } else if faces.insert(k, *s).is_some() {
                            errs.push(Error::new(ErrorKind::DuplicateId, format!("face {:?} listed twice in {:?}", f, c.id)));
                        }
                    }
                }
            }
            cells.push(Cell { id: c.id.clone(), dim: c.dim, faces: faces.into_iter().collect() });
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let x = Self::assemble(cells, index);
        for c in 0..x.len() {
            if let Some(e) = x.d_squared_defect(c) {
                errs.push(e);
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        for c in 0..x.len() {
            if !x.boundary_is_sphere(c) {
                errs.push(Error::new(ErrorKind::BoundaryNotSphere, format!("boundary of {:?} does not have the homology of S^{}", x.cells[c].id, x.cells[c].dim as i64 - 1)));
            }
        }
        if errs.is_empty() {
            Ok(x)
        } else {
            Err(errs)
        }
    }

    /// Like [`BallComplex::validate`] but reports only the first violation.
    pub fn new(raw: &[RawCell]) -> Result<BallComplex> {
        Self::validate(raw).map_err(|mut e| e.remove(0))
    }

    fn assemble(cells: Vec<Cell>, index: BTreeMap<String, usize>) -> BallComplex {
        let n = cells.len();
        let mut cofaces = vec![Vec::new(); n];
        for (i, c) in cells.iter().enumerate() {
            for &(f, s) in &c.faces {
                cofaces[f].push((i, s));
            }
        }
        let mut down: Vec<Vec<usize>> = Vec::with_capacity(n);
        for (i, c) in cells.iter().enumerate() {
            let mut set = BTreeSet::from([i]);
            for &(f, _) in &c.faces {
                set.extend(down[f].iter().copied());
            }
            down.push(set.into_iter().collect());
        }
        let mut up = vec![Vec::new(); n];
        for (i, d) in down.iter().enumerate() {
            for &f in d {
                up[f].push(i);
            }
        }
        let top = cells.iter().map(|c| c.dim).max().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        let mut pos = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            pos[i] = by_dim[c.dim].len();
            by_dim[c.dim].push(i);
        }
        BallComplex { cells, index, cofaces, down, up, by_dim, pos }
    }

    fn d_squared_defect(&self, c: usize) -> Option<Error> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(f, s) in &self.cells[c].faces {
            for &(g, t) in &self.cells[f].faces {
                *acc.entry(g).or_default() += s * t;
            }
        }
        acc.into_iter().find(|&(_, v)| v != 0).map(|(g, _)| {
            Error::new(ErrorKind::NotDSquaredZero, format!("∂∂{:?} has coefficient on {:?}", self.cells[c].id, self.cells[g].id))
        })
    }

    fn boundary_is_sphere(&self, c: usize) -> bool {
        let d = self.cells[c].dim;
        if d == 0 {
            return true;
        }
        let cells: Vec<usize> = self.down[c].iter().copied().filter(|&x| x != c).collect();
        let h = self.chain_complex_on(&cells).homology();
        let mut want = BTreeMap::new();
        if d == 1 {
            want.insert(0, HomologyGroup::z(2));
        } else {
            want.insert(0, HomologyGroup::z(1));
            want.insert(d as i32 - 1, HomologyGroup::z(1));
        }
        h.groups == want
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Top dimension (0 for the empty complex).
    pub fn dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_dim(&self, i: usize) -> usize {
        self.cells[i].dim
    }

    pub fn id(&self, i: usize) -> &str {
        &self.cells[i].id
    }

    pub fn find(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Index lookup that reports an unknown id as [`ErrorKind::DanglingFace`].
    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.find(id).ok_or_else(|| Error::new(ErrorKind::DanglingFace, format!("unknown cell {id:?}")))
    }

    pub fn faces(&self, i: usize) -> &[(usize, i64)] {
        &self.cells[i].faces
    }

    pub fn cofaces(&self, i: usize) -> &[(usize, i64)] {
        &self.cofaces[i]
    }

    /// Incidence number `[τ : σ]` of a codimension-one face `τ < σ` (0 otherwise).
    pub fn incidence(&self, tau: usize, sigma: usize) -> i64 {
        self.cells[sigma].faces.iter().find(|&&(f, _)| f == tau).map_or(0, |&(_, s)| s)
    }

    /// Cells of dimension `n` in basis order.
    pub fn cells_of_dim(&self, n: usize) -> &[usize] {
        self.by_dim.get(n).map_or(&[], |v| v.as_slice())
    }

    /// Position of a cell in the basis of its degree.
    pub fn position(&self, i: usize) -> usize {
        self.pos[i]
    }

    /// `a ≤ b` in the face order.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.down[b].binary_search(&a).is_ok()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    /// All `τ ≤ σ`, in index order.
    pub fn closure(&self, sigma: usize) -> &[usize] {
        &self.down[sigma]
    }

    /// All `τ ≥ σ`, in index order.
    pub fn star(&self, sigma: usize) -> &[usize] {
        &self.up[sigma]
    }

    /// All `τ` with `ρ ≤ τ ≤ σ`.
    pub fn interval(&self, rho: usize, sigma: usize) -> Result<Vec<usize>> {
        if !self.le(rho, sigma) {
            return Err(Error::new(ErrorKind::NotComparable, format!("{:?} is not a face of {:?}", self.id(rho), self.id(sigma))));
        }
        Ok(self.down[sigma].iter().copied().filter(|&t| self.le(rho, t)).collect())
    }

    /// Cellular chains with basis the cells, labelled by id.
    pub fn chain_complex(&self) -> ChainComplex {
        let all: Vec<usize> = (0..self.len()).collect();
        self.chain_complex_on(&all)
    }

    /// Chains on an arbitrary set of cells with the inherited incidences. This is a
    /// subcomplex, quotient or interval complex depending on the set.
    pub fn chain_complex_on(&self, cells: &[usize]) -> ChainComplex {
        let mut by_dim: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let mut sorted = cells.to_vec();
        sorted.sort_unstable();
        for &c in &sorted {
            by_dim.entry(self.cells[c].dim as i32).or_default().push(c);
        }
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for (&n, cs) in &by_dim {
            ranks.insert(n, cs.len());
            labels.insert(n, cs.iter().map(|&c| self.cells[c].id.clone()).collect::<Vec<_>>());
            if let Some(below) = by_dim.get(&(n - 1)) {
                let pos: BTreeMap<usize, usize> = below.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                let trip = cs.iter().enumerate().flat_map(|(j, &c)| self.cells[c].faces.iter().filter_map(|(f, s)| pos.get(f).map(|&i| (i, j, *s))).collect::<Vec<_>>());
                diffs.insert(n, Matrix::from_triplets(below.len(), cs.len(), trip));
            }
        }
        ChainComplex::from_map(&ranks, &diffs).expect("cellular differential squares to zero").with_label_map(&labels)
    }

    /// Cellular cochains `C^{-*}`, concentrated in non-positive degrees.
    pub fn cochain_complex(&self) -> ChainComplex {
        self.chain_complex().dual()
    }

    /// Sub-complex generated by the given cells (they must already be face-closed).
    pub fn subcomplex(&self, cells: &[usize]) -> Result<BallComplex> {
        let set: BTreeSet<usize> = cells.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&c| self.cells[c].faces.iter().any(|(f, _)| !set.contains(f))) {
            return Err(Error::new(ErrorKind::NotClosed, format!("{:?} has a face outside the subset", self.id(bad))));
        }
        let raw: Vec<RawCell> = set
            .iter()
            .map(|&c| RawCell { id: self.cells[c].id.clone(), dim: self.cells[c].dim, faces: self.cells[c].faces.iter().map(|&(f, s)| (self.cells[f].id.clone(), s)).collect() })
            .collect();
        Ok(BallComplex::new(&raw).expect("face-closed subsets of ball complexes are ball complexes"))
    }

    /// The product complex; `σ × τ` has id `(σ,τ)` and boundary
    /// `∂σ × τ + (-1)^{|σ|} σ × ∂τ`. Cells are ordered so that the chain complex is
    /// literally the tensor product of the factors' chain complexes.
    pub fn product(&self, other: &BallComplex) -> BallComplex {
        let pid = |a: usize, b: usize| format!("({},{})", self.id(a), other.id(b));
        let mut raw = Vec::new();
        for n in 0..=self.dim() + other.dim() {
            for p in 0..=n.min(self.dim()) {
                if n - p > other.dim() {
                    continue;
                }
                for &a in self.cells_of_dim(p) {
                    for &b in other.cells_of_dim(n - p) {
                        let mut faces = Vec::new();
                        for &(f, s) in self.faces(a) {
                            faces.push((pid(f, b), s));
                        }
                        let sg = if p % 2 == 0 { 1 } else { -1 };
                        for &(g, t) in other.faces(b) {
                            faces.push((pid(a, g), sg * t));
                        }
                        raw.push(RawCell { id: pid(a, b), dim: n, faces });
                    }
                }
            }
        }
        Self::trusted(raw)
    }

    /// Builds a complex from data known to be valid (products, subdivisions).
    pub(crate) fn trusted(raw: Vec<RawCell>) -> BallComplex {
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| raw[i].dim);
        let index: BTreeMap<String, usize> = order.iter().enumerate().map(|(k, &i)| (raw[i].id.clone(), k)).collect();
        let cells = order
            .iter()
            .map(|&i| {
                let c = &raw[i];
                let mut faces: Vec<(usize, i64)> = c.faces.iter().map(|(f, s)| (index[f], *s)).collect();
                faces.sort_unstable();
                Cell { id: c.id.clone(), dim: c.dim, faces }
            })
            .collect();
        Self::assemble(cells, index)
    }

    /// Index of the product cell `(a, b)` inside `self.product(other)`.
    pub fn product_index(&self, other: &BallComplex, prod: &BallComplex, a: usize, b: usize) -> usize {
        prod.find(&format!("({},{})", self.id(a), other.id(b))).expect("product cell")
    }

    /// Cells of dimension at most `k`.
    pub fn skeleton(self: &Arc<Self>, k: usize) -> ComplexPair {
        let cells: Vec<usize> = (0..self.len()).filter(|&c| self.cells[c].dim <= k).collect();
        ComplexPair { total: Arc::new(self.subcomplex(&cells).expect("skeleta are closed")), sub: BTreeSet::new() }
    }

    /// The pair `(Y, Z)` given by two cell subsets; both must be face-closed and `Z ⊆ Y`.
    pub fn restrict_pair(&self, y: &[usize], z: &[usize]) -> Result<ComplexPair> {
        let ys: BTreeSet<usize> = y.iter().copied().collect();
        if let Some(&bad) = z.iter().find(|c| !ys.contains(c)) {
            return Err(Error::new(ErrorKind::NotClosed, format!("{:?} is not in the ambient subcomplex", self.id(bad))));
        }
        let total = Arc::new(self.subcomplex(y)?);
        self.subcomplex(z)?;
        let sub = z.iter().map(|&c| total.find(self.id(c)).unwrap()).collect();
        Ok(ComplexPair { total, sub })
    }

    /// Cells that are faces of exactly one top-dimensional cell, closed downwards.
    pub fn boundary_subcomplex(&self) -> Vec<usize> {
        let n = self.dim();
        let mut set = BTreeSet::new();
        if n == 0 {
            return Vec::new();
        }
        for &f in self.cells_of_dim(n - 1) {
            if self.cofaces[f].iter().filter(|&&(c, _)| self.cells[c].dim == n).count() == 1 {
                set.extend(self.down[f].iter().copied());
            }
        }
        set.into_iter().collect()
    }

    /// `true` if the given cells are closed under taking faces.
    pub fn is_closed(&self, cells: &[usize]) -> bool {
        let set: BTreeSet<usize> = cells.iter().copied().collect();
        set.iter().all(|&c| self.cells[c].faces.iter().all(|(f, _)| set.contains(f)))
    }
}

/// A complex together with a face-closed subset of its cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPair {
    pub total: Arc<BallComplex>,
    pub sub: BTreeSet<usize>,
}

impl ComplexPair {
    pub fn new(total: Arc<BallComplex>, sub: &[usize]) -> Result<Self> {
        if !total.is_closed(sub) {
            return Err(Error::new(ErrorKind::NotClosed, "subcomplex is not closed under faces"));
        }
        Ok(ComplexPair { total, sub: sub.iter().copied().collect() })
    }

    /// Relative cellular chains: cells of the total complex not in the subcomplex.
    pub fn chain_complex(&self) -> ChainComplex {
        let cells: Vec<usize> = (0..self.total.len()).filter(|c| !self.sub.contains(c)).collect();
        self.total.chain_complex_on(&cells)
    }

    pub fn cochain_complex(&self) -> ChainComplex {
        self.chain_complex().dual()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::corpus;

    #[test]
    fn interval_is_valid() {
        let x = corpus::interval();
        assert_eq!(x.len(), 3);
        let h = x.chain_complex().homology();
        assert_eq!(h.describe(), "H0=Z");
    }

    #[test]
    fn square_cell_boundary_is_circle() {
        let x = corpus::square_cell();
        let f = x.find("f").unwrap();
        let bd: Vec<usize> = x.closure(f).iter().copied().filter(|&c| c != f).collect();
        let h = x.chain_complex_on(&bd).homology();
        assert_eq!((h.betti(0), h.betti(1)), (1, 1));
    }

    #[test]
    fn flipped_sign_breaks_d_squared() {
        let mut raw = corpus::square_cell_raw();
        let e = raw.iter_mut().find(|c| c.id == "e0").unwrap();
        e.faces[0].1 = -e.faces[0].1;
        let errs = BallComplex::validate(&raw).unwrap_err();
        assert!(errs.iter().any(|e| e.kind == ErrorKind::NotDSquaredZero));
    }

    #[test]
    fn dangling_and_dim_errors() {
        let raw = vec![RawCell::new("v", 0, &[]), RawCell::new("e", 1, &[("w", 1), ("v", -1)])];
        let errs = BallComplex::validate(&raw).unwrap_err();
        assert_eq!(errs[0].kind, ErrorKind::DanglingFace);
        let raw = vec![RawCell::new("v", 0, &[]), RawCell::new("f", 2, &[("v", 1)])];
        assert_eq!(BallComplex::validate(&raw).unwrap_err()[0].kind, ErrorKind::DimMismatch);
        let raw = vec![RawCell::new("v", 0, &[]), RawCell::new("v", 0, &[])];
        assert_eq!(BallComplex::validate(&raw).unwrap_err()[0].kind, ErrorKind::DuplicateId);
    }

    #[test]
    fn loop_edge_is_not_a_ball() {
        // an edge with both ends on one vertex: ∂ = v - v = 0, boundary is a point
        let raw = vec![RawCell::new("v", 0, &[]), RawCell::new("e", 1, &[("v", 1)])];
        let errs = BallComplex::validate(&raw).unwrap_err();
        assert_eq!(errs[0].kind, ErrorKind::BoundaryNotSphere);
    }

    #[test]
    fn intervals_and_stars() {
        let x = corpus::square_cell();
        let (v, f) = (x.find("v0").unwrap(), x.find("f").unwrap());
        assert_eq!(x.interval(v, f).unwrap().len(), 4);
        assert_eq!(x.interval(f, f).unwrap(), vec![f]);
        assert_eq!(x.interval(f, v).unwrap_err().kind, ErrorKind::NotComparable);
        let e = x.find("e0").unwrap();
        assert_eq!(x.star(e).len(), 2);
        assert_eq!(x.star(f), &[f]);
        let i = corpus::interval();
        assert_eq!(i.interval(i.find("v0").unwrap(), i.find("e").unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn torus_counts_and_star() {
        let c = corpus::circle3();
        let t = c.product(&c);
        assert_eq!((t.cells_of_dim(0).len(), t.cells_of_dim(1).len(), t.cells_of_dim(2).len()), (9, 18, 9));
        assert_eq!(t.chain_complex().euler_characteristic(), 0);
        let v = t.find("(a,a)").unwrap();
        let st = t.star(v);
        let count = |d| st.iter().filter(|&&s| t.cell_dim(s) == d).count();
        assert_eq!((count(0), count(1), count(2)), (1, 4, 4));
    }

    #[test]
    fn product_chain_complex_is_tensor() {
        let c = corpus::circle3();
        let t = c.product(&c);
        let tc = crate::chain::tensor(&c.chain_complex(), &c.chain_complex()).drop_labels();
        assert_eq!(t.chain_complex().drop_labels(), tc);
        let p = corpus::point();
        let cp = c.product(&p);
        assert_eq!(cp.chain_complex().drop_labels(), c.chain_complex().drop_labels());
    }

    #[test]
    fn skeleton_and_pairs() {
        let x = Arc::new(corpus::square_cell());
        let s1 = x.skeleton(1);
        let h = s1.chain_complex().homology();
        assert_eq!((h.betti(0), h.betti(1)), (1, 1));
        assert_eq!(x.skeleton(2).total.len(), x.len());
        let all: Vec<usize> = (0..x.len()).collect();
        let bd = x.boundary_subcomplex();
        assert_eq!(bd.len(), 8);
        let p = x.restrict_pair(&all, &bd).unwrap();
        let h = p.chain_complex().homology();
        assert_eq!(h.describe(), "H2=Z");
        assert_eq!(p.cochain_complex().homology().describe(), "H-2=Z");
        assert_eq!(x.restrict_pair(&bd, &all).unwrap_err().kind, ErrorKind::NotClosed);
        let f = x.find("f").unwrap();
        assert_eq!(x.restrict_pair(&[f], &[]).unwrap_err().kind, ErrorKind::NotClosed);
    }

    #[test]
    fn relative_interval_pair() {
        let x = Arc::new(corpus::interval());
        let ends = [x.find("v0").unwrap(), x.find("v1").unwrap()];
        let p = ComplexPair::new(x.clone(), &ends).unwrap();
        assert_eq!(p.chain_complex().homology().describe(), "H1=Z");
    }
}

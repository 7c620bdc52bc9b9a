//! Ordered simplicial complexes, the derived subdivision and dual cells.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::ball::{BallComplex, RawCell};
use crate::chain::{ChainComplex, ChainMap, Matrix};

/// A simplex given by its vertices in increasing order.
pub type Simplex = Vec<usize>;

/// A simplicial complex on totally ordered vertices. Simplices of each dimension are
/// kept in lexicographic order, which is the basis order of its chain complex; the
/// `i`-th face of `[x_0, ..., x_l]` omits `x_i` and carries the sign `(-1)^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<BTreeMap<Simplex, usize>>,
    vertex_names: Vec<String>,
}

impl SimplicialComplex {
    /// Builds the complex from a face-closed list of increasing vertex sequences.
    pub fn from_simplices(vertex_names: Vec<String>, all: impl IntoIterator<Item = Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in all {
            debug_assert!(s.windows(2).all(|w| w[0] < w[1]), "vertices must increase");
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for v in &mut by_dim {
            v.sort();
            v.dedup();
        }
        let index = by_dim.iter().map(|v| v.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        SimplicialComplex { simplices: by_dim, index, vertex_names }
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn label(&self, s: &[usize]) -> String {
        let names: Vec<&str> = s.iter().map(|&v| self.vertex_names[v].as_str()).collect();
        names.join("<")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) }).sum()
    }

    pub fn chain_complex(&self) -> ChainComplex {
        self.chain_complex_where(|_| true).0
    }

    /// Chains on the simplices accepted by `keep`, with inherited differential, and
    /// for each degree the indices (in this complex) of the kept simplices.
    pub fn chain_complex_where(&self, keep: impl Fn(&[usize]) -> bool) -> (ChainComplex, BTreeMap<i32, Vec<usize>>) {
        let mut kept: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (d, v) in self.simplices.iter().enumerate() {
            let k: Vec<usize> = (0..v.len()).filter(|&i| keep(&v[i])).collect();
            if !k.is_empty() {
                kept.insert(d as i32, k);
            }
        }
        (self.chain_complex_on(&kept), kept)
    }

    /// Chains on given simplex indices per dimension.
    pub fn chain_complex_on(&self, kept: &BTreeMap<i32, Vec<usize>>) -> ChainComplex {
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for (&d, k) in kept {
            ranks.insert(d, k.len());
            labels.insert(d, k.iter().map(|&i| self.label(&self.simplices[d as usize][i])).collect::<Vec<_>>());
            if d == 0 {
                continue;
            }
            let Some(below) = kept.get(&(d - 1)) else { continue };
            let pos: BTreeMap<usize, usize> = below.iter().enumerate().map(|(j, &i)| (i, j)).collect();
            let mut trip = Vec::new();
            for (col, &i) in k.iter().enumerate() {
                for (f, s) in self.faces(d as usize, i) {
                    if let Some(&r) = pos.get(&f) {
                        trip.push((r, col, s));
                    }
                }
            }
            diffs.insert(d, Matrix::from_triplets(below.len(), k.len(), trip));
        }
        ChainComplex::new_unchecked_map(&ranks, &diffs).with_label_map(&labels)
    }

    /// Faces of the `i`-th `d`-simplex as `(index, sign)`.
    pub fn faces(&self, d: usize, i: usize) -> Vec<(usize, i64)> {
        if d == 0 {
            return Vec::new();
        }
        let s = &self.simplices[d][i];
        (0..s.len())
            .map(|k| {
                let mut f = s.clone();
                f.remove(k);
                (self.index[d - 1][&f], if k % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// The complex as raw cells, ids being the simplex labels.
    pub fn to_raw(&self) -> Vec<RawCell> {
        let mut raw = Vec::new();
        for (d, v) in self.simplices.iter().enumerate() {
            for (i, s) in v.iter().enumerate() {
                let faces = self.faces(d, i).into_iter().map(|(f, sg)| (self.label(&self.simplices[d - 1][f]), sg)).collect();
                raw.push(RawCell { id: self.label(s), dim: d, faces });
            }
        }
        raw
    }
}

/// The derived subdivision `X'`: its vertices are the cells of `X` and its simplices
/// the flags `σ_0 < ... < σ_l`.
#[derive(Clone, Debug)]
pub struct DerivedSubdivision {
    pub source: Arc<BallComplex>,
    pub simplicial: SimplicialComplex,
}

impl DerivedSubdivision {
    pub fn new(source: Arc<BallComplex>) -> Self {
        let x = &*source;
        let mut all = Vec::new();
        // chains starting at c, built from the top dimension down
        let mut from: Vec<Vec<Simplex>> = vec![Vec::new(); x.len()];
        for c in (0..x.len()).rev() {
            let mut v = vec![vec![c]];
            for &t in x.star(c) {
                if t != c {
                    for tail in &from[t] {
                        let mut f = Vec::with_capacity(tail.len() + 1);
                        f.push(c);
                        f.extend_from_slice(tail);
                        v.push(f);
                    }
                }
            }
            from[c] = v;
        }
        for v in from {
            all.extend(v);
        }
        let names = x.cells().iter().map(|c| c.id.clone()).collect();
        DerivedSubdivision { simplicial: SimplicialComplex::from_simplices(names, all), source }
    }

    pub fn chain_complex(&self) -> ChainComplex {
        self.simplicial.chain_complex()
    }

    /// The dual cell `D(σ)`: flags with `σ ≤ σ_0`.
    pub fn dual_cell(&self, sigma: usize) -> DualCell<'_> {
        DualCell { sigma, sub: self }
    }

    /// The subdivision chain map `C(X) -> C(X')`, `sd(σ) = (-1)^{|σ|} K_σ(sd(∂σ))`
    /// where `K_σ` appends the vertex `σ`.
    pub fn subdivision_map(&self) -> ChainMap {
        let x = &*self.source;
        let s = &self.simplicial;
        let mut images: Vec<BTreeMap<usize, i64>> = Vec::with_capacity(x.len());
        for c in 0..x.len() {
            let d = x.cell_dim(c);
            let mut img = BTreeMap::new();
            if d == 0 {
                img.insert(s.position(&[c]).unwrap(), 1);
            } else {
                let sg = if d % 2 == 0 { 1 } else { -1 };
                for &(f, e) in x.faces(c) {
                    for (&k, &v) in &images[f] {
                        let mut flag = s.simplices(d - 1)[k].clone();
                        flag.push(c);
                        *img.entry(s.position(&flag).unwrap()).or_insert(0) += sg * e * v;
                    }
                }
                img.retain(|_, v| *v != 0);
            }
            images.push(img);
        }
        let src = x.chain_complex();
        let tgt = self.chain_complex();
        let comps = src
            .degrees()
            .map(|n| {
                let cells = x.cells_of_dim(n as usize);
                let trip: Vec<(usize, usize, i64)> = cells.iter().enumerate().flat_map(|(j, &c)| images[c].iter().map(move |(&k, &v)| (k, j, v))).collect();
                (n, Matrix::from_triplets(tgt.rank(n), cells.len(), trip))
            })
            .collect();
        ChainMap::from_components(src, tgt, 0, comps)
    }
}

/// A dual cell `D(σ, X)` with its boundary `∂D(σ, X)` (flags with `σ < σ_0`).
#[derive(Clone, Copy)]
pub struct DualCell<'a> {
    pub sigma: usize,
    sub: &'a DerivedSubdivision,
}

impl DualCell<'_> {
    pub fn contains(&self, flag: &[usize]) -> bool {
        self.sub.source.le(self.sigma, flag[0])
    }

    pub fn in_boundary(&self, flag: &[usize]) -> bool {
        self.sub.source.lt(self.sigma, flag[0])
    }

    /// `C(D(σ))`.
    pub fn chain_complex(&self) -> ChainComplex {
        self.sub.simplicial.chain_complex_where(|f| self.contains(f)).0
    }

    /// `C(∂D(σ))`.
    pub fn boundary_chain_complex(&self) -> ChainComplex {
        self.sub.simplicial.chain_complex_where(|f| self.in_boundary(f)).0
    }

    /// `C(D(σ), ∂D(σ))`, the flags starting exactly at `σ`.
    pub fn relative_chain_complex(&self) -> ChainComplex {
        self.sub.simplicial.chain_complex_where(|f| f[0] == self.sigma).0
    }

    /// Flags of `D(σ)` and of `∂D(σ)` per dimension.
    pub fn counts(&self) -> (Vec<usize>, Vec<usize>) {
        let s = &self.sub.simplicial;
        let count = |p: &dyn Fn(&[usize]) -> bool| (0..=s.dim()).map(|d| s.simplices(d).iter().filter(|f| p(f)).count()).collect::<Vec<_>>();
        (count(&|f| self.contains(f)), count(&|f| self.in_boundary(f)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::corpus;

    fn sd(x: BallComplex) -> DerivedSubdivision {
        DerivedSubdivision::new(Arc::new(x))
    }

    #[test]
    fn counts_of_small_subdivisions() {
        let p = sd(corpus::point());
        assert_eq!(p.simplicial.count(0), 1);
        let i = sd(corpus::interval());
        assert_eq!((i.simplicial.count(0), i.simplicial.count(1)), (3, 2));
        let s = sd(corpus::square_cell());
        assert_eq!((s.simplicial.count(0), s.simplicial.count(1), s.simplicial.count(2)), (9, 16, 8));
        assert_eq!(s.simplicial.euler_characteristic(), 1);
    }

    #[test]
    fn subdivision_preserves_homology() {
        for x in [corpus::torus(), corpus::octahedron(), corpus::mobius(), corpus::cube(3)] {
            let d = sd(x.clone());
            assert_eq!(d.chain_complex().homology(), x.chain_complex().homology());
            assert_eq!(d.simplicial.euler_characteristic(), x.chain_complex().euler_characteristic());
            let f = d.subdivision_map();
            assert!(f.is_chain_map());
            assert!(f.is_chain_equivalence());
        }
    }

    #[test]
    fn dual_cells_of_interval() {
        let d = sd(corpus::interval());
        let x = d.source.clone();
        let e = d.dual_cell(x.find("e").unwrap());
        assert_eq!(e.counts(), (vec![1, 0], vec![0, 0]));
        let v0 = d.dual_cell(x.find("v0").unwrap());
        assert_eq!(v0.counts(), (vec![2, 1], vec![1, 0]));
        // at a boundary vertex the pair (D, ∂D) is a cone on its base
        assert!(v0.relative_chain_complex().is_acyclic());
    }

    #[test]
    fn dual_cells_are_cones() {
        for x in [corpus::torus(), corpus::octahedron(), corpus::cube(3)] {
            let d = sd(x.clone());
            for s in 0..x.len() {
                let c = d.dual_cell(s);
                assert_eq!(c.chain_complex().homology().describe(), "H0=Z");
                let n = (x.dim() - x.cell_dim(s)) as i32;
                if x.boundary_subcomplex().is_empty() {
                    assert_eq!(c.relative_chain_complex().homology().get(n).free, 1);
                }
            }
        }
    }

    #[test]
    fn raw_roundtrip_is_valid() {
        let d = sd(corpus::square_cell());
        let y = BallComplex::new(&d.simplicial.to_raw()).unwrap();
        assert_eq!(y.len(), 33);
    }
}

//! Tensor products, Hom complexes, slant maps and the chain-homotopy solver.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::ChainComplex;
use super::elim::solve;
use super::map::ChainMap;
use super::matrix::{sign, Matrix};

/// `(-1)^{k(k-1)/2}`.
pub fn koszul_c(k: i64) -> i64 {
    sign(k.rem_euclid(4) * (k.rem_euclid(4) - 1) / 2)
}

/// Basis bookkeeping for `(C ⊗ D)_n = ⊕_{p+q=n} C_p ⊗ D_q`.
///
/// Blocks are ordered by increasing `p`; inside a block `a_i ⊗ b_j` sits at
/// `offset + i * rank(D_q) + j`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    c_ranks: BTreeMap<i32, usize>,
    d_ranks: BTreeMap<i32, usize>,
    offsets: BTreeMap<(i32, i32), usize>,
    totals: BTreeMap<i32, usize>,
}

impl TensorLayout {
    pub fn new(c: &ChainComplex, d: &ChainComplex) -> Self {
        let c_ranks: BTreeMap<i32, usize> = c.degrees().map(|p| (p, c.rank(p))).collect();
        let d_ranks: BTreeMap<i32, usize> = d.degrees().map(|q| (q, d.rank(q))).collect();
        let mut offsets = BTreeMap::new();
        let mut totals = BTreeMap::new();
        if !c.is_zero() && !d.is_zero() {
            for n in c.lo() + d.lo()..=c.hi() + d.hi() {
                let mut off = 0;
                for p in c.degrees() {
                    let q = n - p;
                    let (rc, rd) = (c.rank(p), d.rank(q));
                    if rc * rd > 0 {
                        offsets.insert((n, p), off);
                        off += rc * rd;
                    }
                }
                totals.insert(n, off);
            }
        }
        TensorLayout { c_ranks, d_ranks, offsets, totals }
    }

    pub fn rank(&self, n: i32) -> usize {
        self.totals.get(&n).copied().unwrap_or(0)
    }

    fn rc(&self, p: i32) -> usize {
        self.c_ranks.get(&p).copied().unwrap_or(0)
    }

    fn rd(&self, q: i32) -> usize {
        self.d_ranks.get(&q).copied().unwrap_or(0)
    }

    /// Index of `a_i ⊗ b_j` with `a_i ∈ C_p`, `b_j ∈ D_q`.
    pub fn index(&self, p: i32, i: usize, q: i32, j: usize) -> usize {
        self.offsets[&(p + q, p)] + i * self.rd(q) + j
    }

    /// Inverse of [`TensorLayout::index`] in degree `n`: returns `(p, i, q, j)`.
    pub fn locate(&self, n: i32, k: usize) -> (i32, usize, i32, usize) {
        let (&(_, p), &off) = self.offsets.range((n, i32::MIN)..=(n, i32::MAX)).rev().find(|(_, &o)| o <= k).expect("index in range");
        let q = n - p;
        let r = k - off;
        (p, r / self.rd(q), q, r % self.rd(q))
    }

    /// The blocks `(p, q)` present in degree `n`.
    pub fn blocks(&self, n: i32) -> Vec<(i32, i32)> {
        self.offsets.range((n, i32::MIN)..=(n, i32::MAX)).map(|(&(_, p), _)| (p, n - p)).collect()
    }

    pub fn block_shape(&self, p: i32, q: i32) -> (usize, usize) {
        (self.rc(p), self.rd(q))
    }
}

/// `C ⊗ D` with `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> ChainComplex {
    if c.is_zero() || d.is_zero() {
        return ChainComplex::zero();
    }
    let lay = TensorLayout::new(c, d);
    let mut diffs = BTreeMap::new();
    for n in c.lo() + d.lo()..=c.hi() + d.hi() {
        let mut trip = Vec::new();
        for (p, q) in lay.blocks(n) {
            let dc = c.d(p);
            let dd = d.d(q);
            for i in 0..c.rank(p) {
                for j in 0..d.rank(q) {
                    let col = lay.index(p, i, q, j);
                    for &(k, x) in dc.col(i) {
                        trip.push((lay.index(p - 1, k, q, j), col, x));
                    }
                    for &(k, x) in dd.col(j) {
                        trip.push((lay.index(p, i, q - 1, k), col, sign(p as i64) * x));
                    }
                }
            }
        }
        diffs.insert(n, Matrix::from_triplets(lay.rank(n - 1), lay.rank(n), trip));
    }
    let mut out = ChainComplex::new(c.lo() + d.lo(), (c.lo() + d.lo()..=c.hi() + d.hi()).map(|n| lay.rank(n)).collect(), {
        let lo = c.lo() + d.lo();
        (lo..=c.hi() + d.hi()).map(|n| if n == lo { Matrix::zeros(0, lay.rank(n)) } else { diffs.remove(&n).unwrap() }).collect()
    })
    .expect("tensor of complexes is a complex");
    if c.has_labels() && d.has_labels() {
        let labels: BTreeMap<i32, Vec<String>> = out
            .degrees()
            .map(|n| {
                let l = (0..lay.rank(n))
                    .map(|k| {
                        let (p, i, q, j) = lay.locate(n, k);
                        format!("{}⊗{}", c.labels(p).unwrap()[i], d.labels(q).unwrap()[j])
                    })
                    .collect();
                (n, l)
            })
            .collect();
        out = out.with_label_map(&labels);
    }
    out
}

/// Switch `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a` on `(C ⊗ C)_n`.
pub fn switch_matrix(c: &ChainComplex, n: i32) -> Matrix {
    let lay = TensorLayout::new(c, c);
    let mut trip = Vec::new();
    for (p, q) in lay.blocks(n) {
        let s = sign(p as i64 * q as i64);
        for i in 0..c.rank(p) {
            for j in 0..c.rank(q) {
                trip.push((lay.index(q, j, p, i), lay.index(p, i, q, j), s));
            }
        }
    }
    Matrix::from_triplets(lay.rank(n), lay.rank(n), trip)
}

/// `f ⊗ g` with `(f ⊗ g)(a ⊗ b) = (-1)^{|g||a|} f(a) ⊗ g(b)`.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let src = tensor(&f.source, &g.source);
    let tgt = tensor(&f.target, &g.target);
    let ls = TensorLayout::new(&f.source, &g.source);
    let lt = TensorLayout::new(&f.target, &g.target);
    let (s, t) = (f.shift, g.shift);
    let mut comps = BTreeMap::new();
    for n in src.degrees() {
        let mut trip = Vec::new();
        for (p, q) in ls.blocks(n) {
            let fp = f.component(p);
            let gq = g.component(q);
            let sg = sign(t as i64 * p as i64);
            for i in 0..f.source.rank(p) {
                for j in 0..g.source.rank(q) {
                    let col = ls.index(p, i, q, j);
                    for &(k, x) in fp.col(i) {
                        for &(l, y) in gq.col(j) {
                            trip.push((lt.index(p + s, k, q + t, l), col, sg * x * y));
                        }
                    }
                }
            }
        }
        comps.insert(n, Matrix::from_triplets(tgt.rank(n + s + t), src.rank(n), trip));
    }
    ChainMap::from_components(src, tgt, s + t, comps)
}

/// Applies a degree-0 chain map to both factors of `(C ⊗ C)_n` chains: `f ⊗ f`.
pub fn tensor_square_vec(f: &ChainMap, n: i32, x: &[i64]) -> Vec<i64> {
    assert_eq!(f.shift, 0);
    let ls = TensorLayout::new(&f.source, &f.source);
    let lt = TensorLayout::new(&f.target, &f.target);
    let mut out = vec![0i64; lt.rank(n)];
    for (k, &c) in x.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (p, i, q, j) = ls.locate(n, k);
        let (fp, fq) = (f.component(p), f.component(q));
        for &(a, u) in fp.col(i) {
            for &(b, v) in fq.col(j) {
                let t = &mut out[lt.index(p, a, q, b)];
                *t += c * u * v;
            }
        }
    }
    out
}

/// Basis bookkeeping for `Hom(C, D)_n = ⊕_p Hom(C_p, D_{p+n})`; the entry `(i, j)` of
/// the block for source degree `p` sits at `offset + j * rank(D_{p+n}) + i`.
#[derive(Clone, Debug)]
pub struct HomLayout {
    offsets: BTreeMap<(i32, i32), usize>,
    totals: BTreeMap<i32, usize>,
    target_ranks: BTreeMap<i32, usize>,
}

impl HomLayout {
    pub fn new(c: &ChainComplex, d: &ChainComplex) -> Self {
        let mut offsets = BTreeMap::new();
        let mut totals = BTreeMap::new();
        if !c.is_zero() && !d.is_zero() {
            for n in d.lo() - c.hi()..=d.hi() - c.lo() {
                let mut off = 0;
                for p in c.degrees() {
                    let sz = c.rank(p) * d.rank(p + n);
                    if sz > 0 {
                        offsets.insert((n, p), off);
                        off += sz;
                    }
                }
                totals.insert(n, off);
            }
        }
        HomLayout { offsets, totals, target_ranks: d.degrees().map(|q| (q, d.rank(q))).collect() }
    }

    pub fn rank(&self, n: i32) -> usize {
        self.totals.get(&n).copied().unwrap_or(0)
    }

    pub fn index(&self, n: i32, p: i32, i: usize, j: usize) -> usize {
        self.offsets[&(n, p)] + j * self.target_ranks[&(p + n)] + i
    }

    fn has(&self, n: i32, p: i32) -> bool {
        self.offsets.contains_key(&(n, p))
    }
}

/// Matrix of the Hom differential `Hom(C, D)_n -> Hom(C, D)_{n-1}`,
/// `dφ = d_D φ - (-1)^n φ d_C`.
pub fn hom_differential(c: &ChainComplex, d: &ChainComplex, lay: &HomLayout, n: i32) -> Matrix {
    let mut trip = Vec::new();
    let sn = -sign(n as i64);
    for p in c.degrees() {
        if !lay.has(n, p) {
            continue;
        }
        let dd = d.d(p + n);
        let dc_up = c.d(p + 1);
        let dc_rows: Vec<Vec<(usize, i64)>> = {
            let mut rows = vec![Vec::new(); c.rank(p)];
            for (r, col, x) in dc_up.triplets() {
                rows[r].push((col, x));
            }
            rows
        };
        for j in 0..c.rank(p) {
            for i in 0..d.rank(p + n) {
                let col = lay.index(n, p, i, j);
                for &(k, x) in dd.col(i) {
                    trip.push((lay.index(n - 1, p, k, j), col, x));
                }
                for &(l, x) in &dc_rows[j] {
                    trip.push((lay.index(n - 1, p + 1, i, l), col, sn * x));
                }
            }
        }
    }
    Matrix::from_triplets(lay.rank(n - 1), lay.rank(n), trip)
}

/// The complex `Hom(C, D)`.
pub fn hom_complex(c: &ChainComplex, d: &ChainComplex) -> ChainComplex {
    if c.is_zero() || d.is_zero() {
        return ChainComplex::zero();
    }
    let lay = HomLayout::new(c, d);
    let lo = d.lo() - c.hi();
    let hi = d.hi() - c.lo();
    let ranks: BTreeMap<i32, usize> = (lo..=hi).map(|n| (n, lay.rank(n))).collect();
    let diffs: BTreeMap<i32, Matrix> = (lo + 1..=hi).map(|n| (n, hom_differential(c, d, &lay, n))).collect();
    ChainComplex::from_map(&ranks, &diffs).expect("Hom complex")
}

/// Coordinates of a map `f` of degree `f.shift` in `Hom(C, D)_{f.shift}`.
pub fn hom_vector(f: &ChainMap, lay: &HomLayout) -> Vec<i64> {
    let n = f.shift;
    let mut v = vec![0i64; lay.rank(n)];
    for (&p, m) in f.components() {
        for (i, j, x) in m.triplets() {
            v[lay.index(n, p, i, j)] = x;
        }
    }
    v
}

/// Inverse of [`hom_vector`].
pub fn hom_from_vector(c: &ChainComplex, d: &ChainComplex, n: i32, lay: &HomLayout, v: &[i64]) -> ChainMap {
    let comps = c
        .degrees()
        .filter(|&p| lay.has(n, p))
        .map(|p| {
            let trip = (0..c.rank(p)).flat_map(|j| (0..d.rank(p + n)).map(move |i| (i, j))).map(|(i, j)| (i, j, v[lay.index(n, p, i, j)]));
            (p, Matrix::from_triplets(d.rank(p + n), c.rank(p), trip.collect::<Vec<_>>()))
        })
        .collect();
    ChainMap::from_components(c.clone(), d.clone(), n, comps)
}

/// Finds `P` of degree `s + 1` with `dP - (-1)^{s+1} P d = f - g`, i.e. a chain
/// homotopy from `g` to `f` in the Hom-complex convention; `None` if no integral
/// solution exists.
pub fn solve_chain_homotopy(f: &ChainMap, g: &ChainMap) -> Option<ChainMap> {
    assert_eq!((f.shift, &f.source, &f.target), (g.shift, &g.source, &g.target), "maps must be parallel");
    let (c, d) = (&f.source, &f.target);
    let s = f.shift;
    let diff = f.sub(g);
    if diff.is_zero() {
        return Some(ChainMap::zero(c, d, s + 1));
    }
    let lay = HomLayout::new(c, d);
    let m = hom_differential(c, d, &lay, s + 1);
    let b = hom_vector(&diff, &lay);
    let x = solve(&m, &b)?;
    let p = hom_from_vector(c, d, s + 1, &lay, &x);
    debug_assert!(hom_differential(c, d, &lay, s + 1).mul_vec(&hom_vector(&p, &lay)) == b);
    Some(p)
}

/// The slant of `x ∈ (C ⊗ D)_n`: the degree-`n` map `TC -> D` with
/// `ξ ↦ (-1)^{pq + p(p-1)/2} ξ(a) b` for `a ⊗ b`, `|a| = p`, `|b| = q`.
/// It is a chain map exactly when `x` is a cycle.
pub fn slant(c: &ChainComplex, d: &ChainComplex, n: i32, x: &[i64]) -> ChainMap {
    let lay = TensorLayout::new(c, d);
    assert_eq!(x.len(), lay.rank(n), "chain has wrong length");
    let tc = c.dual();
    let mut trips: BTreeMap<i32, Vec<(usize, usize, i64)>> = BTreeMap::new();
    for (k, &v) in x.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let (p, i, q, j) = lay.locate(n, k);
        let s = sign(p as i64 * q as i64) * koszul_c(p as i64);
        trips.entry(-p).or_default().push((j, i, s * v));
    }
    let comps = trips.into_iter().map(|(m, t)| (m, Matrix::from_triplets(d.rank(m + n), tc.rank(m), t))).collect();
    ChainMap::from_components(tc, d.clone(), n, comps)
}

/// Inverse of [`slant`]: the chain in `(C ⊗ D)_n` whose slant is `f : TC -> D`.
pub fn unslant(c: &ChainComplex, d: &ChainComplex, f: &ChainMap) -> Vec<i64> {
    let n = f.shift;
    let lay = TensorLayout::new(c, d);
    let mut x = vec![0i64; lay.rank(n)];
    for (&m, mat) in f.components() {
        let p = -m;
        let q = n - p;
        let s = sign(p as i64 * q as i64) * koszul_c(p as i64);
        for (j, i, v) in mat.triplets() {
            x[lay.index(p, i, q, j)] = s * v;
        }
    }
    x
}

/// Differential of `(C ⊗ D)` applied to a chain of degree `n`.
pub fn tensor_boundary(c: &ChainComplex, d: &ChainComplex, n: i32, x: &[i64]) -> Vec<i64> {
    let lay = TensorLayout::new(c, d);
    let mut out = vec![0i64; lay.rank(n - 1)];
    for (k, &v) in x.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let (p, i, q, j) = lay.locate(n, k);
        for &(r, y) in c.d(p).col(i) {
            out[lay.index(p - 1, r, q, j)] += v * y;
        }
        for &(r, y) in d.d(q).col(j) {
            out[lay.index(p, i, q - 1, r)] += sign(p as i64) * v * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        let d1 = Matrix::from_rows(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        ChainComplex::new(0, vec![3, 3], vec![Matrix::zeros(0, 3), d1]).unwrap()
    }

    fn interval() -> ChainComplex {
        ChainComplex::new(0, vec![2, 1], vec![Matrix::zeros(0, 2), Matrix::from_rows(&[vec![-1], vec![1]])]).unwrap()
    }

    #[test]
    fn unit_of_tensor() {
        let c = circle();
        assert_eq!(tensor(&c, &ChainComplex::concentrated(0, 1)), c);
        assert_eq!(tensor(&ChainComplex::concentrated(0, 1), &c), c);
    }

    #[test]
    fn torus_homology_from_tensor() {
        let h = tensor(&circle(), &circle()).homology();
        assert_eq!((h.betti(0), h.betti(1), h.betti(2)), (1, 2, 1));
    }

    #[test]
    fn hom_into_z_is_dual_up_to_signs() {
        let c = tensor(&interval(), &circle());
        let h = hom_complex(&c, &ChainComplex::concentrated(0, 1));
        let t = c.dual();
        for n in t.degrees() {
            let g = |k: i32| koszul_c(k as i64);
            assert_eq!(h.d(n).scale(g(n - 1) * g(n)), t.d(n));
        }
    }

    #[test]
    fn switch_is_involution_and_chain_map() {
        let c = tensor(&interval(), &circle());
        let cc = tensor(&c, &c);
        for n in cc.degrees() {
            let t = switch_matrix(&c, n);
            assert_eq!(t.mul(&t), Matrix::identity(cc.rank(n)));
            assert_eq!(cc.d(n).mul(&t), switch_matrix(&c, n - 1).mul(&cc.d(n)));
        }
    }

    #[test]
    fn slant_of_cycle_is_chain_map() {
        let c = interval();
        let cc = tensor(&c, &c);
        // front/back diagonal of the edge: v0 ⊗ e + e ⊗ v1
        let lay = TensorLayout::new(&c, &c);
        let mut x = vec![0; lay.rank(1)];
        x[lay.index(0, 0, 1, 0)] = 1;
        x[lay.index(1, 0, 0, 1)] = 1;
        let bx = tensor_boundary(&c, &c, 1, &x);
        assert_eq!(bx, cc.d(1).mul_vec(&x));
        let f = slant(&c, &c, 1, &x);
        assert_eq!(unslant(&c, &c, &f), x);
        // not a cycle, so not a chain map
        assert!(!f.is_chain_map());
        let y: Vec<i64> = vec![0; lay.rank(0)];
        assert!(slant(&c, &c, 0, &y).is_chain_map());
    }

    #[test]
    fn homotopy_between_projections_of_acyclic_target() {
        let z = ChainComplex::concentrated(0, 1);
        let cone = ChainMap::identity(&z).cone().unwrap();
        let f = ChainMap::identity(&cone);
        let g = ChainMap::zero(&cone, &cone, 0);
        let p = solve_chain_homotopy(&f, &g).unwrap();
        assert_eq!(p.shift, 1);
    }

    #[test]
    fn no_homotopy_between_distinct_homology_maps() {
        let z = ChainComplex::concentrated(0, 1);
        let f = ChainMap::identity(&z);
        assert!(solve_chain_homotopy(&f, &f.scale(2)).is_none());
        assert!(solve_chain_homotopy(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn tensor_of_maps_is_chain_map() {
        let c = circle();
        let f = ChainMap::identity(&c);
        let z = ChainComplex::concentrated(0, 1);
        let cone = ChainMap::identity(&z).cone().unwrap();
        let p = solve_chain_homotopy(&ChainMap::identity(&cone), &ChainMap::zero(&cone, &cone, 0)).unwrap();
        let t = tensor_maps(&p, &f);
        assert_eq!(t.shift, 1);
        let dt = tensor_maps(&f, &p);
        assert_eq!(dt.shift, 1);
        // identity ⊗ identity
        assert_eq!(tensor_maps(&f, &f), ChainMap::identity(&tensor(&c, &c)));
    }
}

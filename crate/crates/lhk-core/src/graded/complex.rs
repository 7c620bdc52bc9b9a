//! Chain complexes graded over the cells of a ball complex and their morphisms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::chain::{ChainComplex, ChainMap, Matrix};
use crate::complex::BallComplex;
use crate::error::{Error, ErrorKind, Result};

/// Which way cross-ball differential blocks may point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    /// `A^*(X)`: `d_{τσ} ≠ 0` only if `τ ≤ σ`.
    Upper,
    /// `A_*(X)`: `d_{τσ} ≠ 0` only if `τ ≥ σ`.
    Lower,
}

impl Variance {
    pub fn opposite(self) -> Variance {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }

    /// Whether a block from ball `sigma` to ball `tau` is allowed.
    pub fn allows(self, base: &BallComplex, tau: usize, sigma: usize) -> bool {
        match self {
            Variance::Upper => base.le(tau, sigma),
            Variance::Lower => base.le(sigma, tau),
        }
    }

    /// The balls a ball's embedding collects: the closure (upper) or the star (lower).
    pub fn region(self, base: &BallComplex, sigma: usize) -> Vec<usize> {
        match self {
            Variance::Upper => base.closure(sigma).to_vec(),
            Variance::Lower => base.star(sigma).to_vec(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variance::Upper => "upper",
            Variance::Lower => "lower",
        }
    }
}

/// A chain complex in `A^*(X)` or `A_*(X)`: a complex `C(σ)` per ball together with
/// triangular cross-ball blocks. The assembled complex lists, in each degree, the
/// balls in index order and each ball's basis in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    base: Arc<BallComplex>,
    variance: Variance,
    comps: Vec<ChainComplex>,
    assembled: ChainComplex,
    offsets: BTreeMap<i32, Vec<usize>>,
}

impl GradedComplex {
    /// Builds a graded complex from its components and cross blocks; `cross` maps
    /// `(τ, σ)` to the blocks `C(σ)_n -> C(τ)_{n-1}` keyed by `n`.
    pub fn new(base: Arc<BallComplex>, variance: Variance, comps: Vec<ChainComplex>, cross: &BTreeMap<(usize, usize), BTreeMap<i32, Matrix>>) -> Result<Self> {
        if comps.len() != base.len() {
            return Err(Error::new(ErrorKind::ShapeMismatch, "one component per ball required"));
        }
        for &(tau, sigma) in cross.keys() {
            if tau == sigma || !variance.allows(&base, tau, sigma) {
                return Err(Error::new(ErrorKind::VarianceMismatch, format!("block from {:?} to {:?} violates the {} support rule", base.id(sigma), base.id(tau), variance.name())));
            }
        }
        let comps: Vec<ChainComplex> = comps.into_iter().map(with_index_labels).collect();
        let offsets = Self::layout(&comps);
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for (&n, off) in &offsets {
            ranks.insert(n, off[off.len() - 1]);
            let below = offsets.get(&(n - 1));
            let rows = below.map_or(0, |b| b[b.len() - 1]);
            let mut trip = Vec::new();
            for (s, c) in comps.iter().enumerate() {
                if let (Some(b), Some(d)) = (below, c.d_ref(n)) {
                    trip.extend(d.triplets().map(|(i, j, x)| (b[s] + i, off[s] + j, x)));
                }
            }
            for (&(tau, sigma), m) in cross {
                if let (Some(b), Some(blk)) = (below, m.get(&n)) {
                    assert_eq!(blk.shape(), (comps[tau].rank(n - 1), comps[sigma].rank(n)), "cross block has wrong shape");
                    trip.extend(blk.triplets().map(|(i, j, x)| (b[tau] + i, off[sigma] + j, x)));
                }
            }
            diffs.insert(n, Matrix::from_triplets(rows, off[off.len() - 1], trip));
            labels.insert(n, Self::labels_for(&base, &comps, n));
        }
        let assembled = ChainComplex::from_map(&ranks, &diffs)?.with_label_map(&labels);
        Ok(GradedComplex { base, variance, comps, assembled, offsets })
    }

    /// Splits a complex whose basis elements are assigned to balls. Within each
    /// degree the basis must already be grouped by ball in index order.
    pub fn split(base: Arc<BallComplex>, variance: Variance, c: &ChainComplex, owner: &BTreeMap<i32, Vec<usize>>) -> Result<Self> {
        let mut comp_ranks: Vec<BTreeMap<i32, usize>> = vec![BTreeMap::new(); base.len()];
        let mut comp_labels: Vec<BTreeMap<i32, Vec<String>>> = vec![BTreeMap::new(); base.len()];
        let mut local: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for n in c.degrees() {
            let own = owner.get(&n).map_or(&[][..], |v| v.as_slice());
            if own.len() != c.rank(n) || own.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::new(ErrorKind::ShapeMismatch, format!("owners in degree {n} are not grouped by ball")));
            }
            let mut loc = Vec::with_capacity(own.len());
            for (k, &s) in own.iter().enumerate() {
                let r = comp_ranks[s].entry(n).or_insert(0);
                loc.push(*r);
                *r += 1;
                if let Some(l) = c.labels(n) {
                    let prefix = format!("{}|", base.id(s));
                    let inner = l[k].strip_prefix(prefix.as_str()).unwrap_or(&l[k]);
                    comp_labels[s].entry(n).or_default().push(String::from(inner));
                }
            }
            local.insert(n, loc);
        }
        let mut comp_diffs: Vec<BTreeMap<i32, Vec<(usize, usize, i64)>>> = vec![BTreeMap::new(); base.len()];
        let mut cross: BTreeMap<(usize, usize), BTreeMap<i32, Vec<(usize, usize, i64)>>> = BTreeMap::new();
        for n in c.degrees() {
            let Some(d) = c.d_ref(n) else { continue };
            for (i, j, x) in d.triplets() {
                let (tau, sigma) = (owner[&(n - 1)][i], owner[&n][j]);
                let t = (local[&(n - 1)][i], local[&n][j], x);
                if tau == sigma {
                    comp_diffs[sigma].entry(n).or_default().push(t);
                } else {
                    cross.entry((tau, sigma)).or_default().entry(n).or_default().push(t);
                }
            }
        }
        let comps: Vec<ChainComplex> = (0..base.len())
            .map(|s| {
                let r = &comp_ranks[s];
                let diffs = comp_diffs[s].iter().map(|(&n, t)| (n, Matrix::from_triplets(r.get(&(n - 1)).copied().unwrap_or(0), r[&n], t.iter().copied()))).collect();
                let cc = ChainComplex::new_unchecked_map(r, &diffs);
                if c.has_labels() {
                    cc.with_label_map(&comp_labels[s])
                } else {
                    cc
                }
            })
            .collect();
        let cross = cross
            .into_iter()
            .map(|((tau, sigma), m)| {
                let blocks = m.into_iter().map(|(n, t)| (n, Matrix::from_triplets(comps[tau].rank(n - 1), comps[sigma].rank(n), t))).collect();
                ((tau, sigma), blocks)
            })
            .collect();
        Self::new(base, variance, comps, &cross)
    }

    fn layout(comps: &[ChainComplex]) -> BTreeMap<i32, Vec<usize>> {
        let nonzero: Vec<&ChainComplex> = comps.iter().filter(|c| !c.is_zero()).collect();
        let mut offsets = BTreeMap::new();
        if nonzero.is_empty() {
            return offsets;
        }
        let lo = nonzero.iter().map(|c| c.lo()).min().unwrap();
        let hi = nonzero.iter().map(|c| c.hi()).max().unwrap();
        for n in lo..=hi {
            let mut off = Vec::with_capacity(comps.len() + 1);
            let mut acc = 0;
            for c in comps {
                off.push(acc);
                acc += c.rank(n);
            }
            off.push(acc);
            offsets.insert(n, off);
        }
        offsets
    }

    fn labels_for(base: &BallComplex, comps: &[ChainComplex], n: i32) -> Vec<String> {
        let mut out = Vec::new();
        for (s, c) in comps.iter().enumerate() {
            for k in 0..c.rank(n) {
                out.push(format!("{}|{}", base.id(s), c.labels(n).expect("labelled component")[k]));
            }
        }
        out
    }

    pub fn base(&self) -> &Arc<BallComplex> {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn component(&self, sigma: usize) -> &ChainComplex {
        &self.comps[sigma]
    }

    pub fn components(&self) -> &[ChainComplex] {
        &self.comps
    }

    /// The total complex.
    pub fn assemble(&self) -> &ChainComplex {
        &self.assembled
    }

    /// Positions of ball `sigma`'s basis inside the assembled degree `n`.
    pub fn range(&self, n: i32, sigma: usize) -> core::ops::Range<usize> {
        match self.offsets.get(&n) {
            Some(o) => o[sigma]..o[sigma + 1],
            None => 0..0,
        }
    }

    /// Positions of the union of the given balls' bases in assembled degree `n`.
    pub fn indices(&self, n: i32, balls: &[usize]) -> Vec<usize> {
        let mut b = balls.to_vec();
        b.sort_unstable();
        b.into_iter().flat_map(|s| self.range(n, s)).collect()
    }

    /// Ball owning each assembled basis element of degree `n`.
    pub fn owners(&self, n: i32) -> Vec<usize> {
        (0..self.base.len()).flat_map(|s| core::iter::repeat(s).take(self.comps[s].rank(n))).collect()
    }

    pub fn owner_map(&self) -> BTreeMap<i32, Vec<usize>> {
        self.assembled.degrees().map(|n| (n, self.owners(n))).collect()
    }

    /// Block `C(σ)_n -> C(τ)_{n-1}` of the assembled differential.
    pub fn block(&self, tau: usize, sigma: usize, n: i32) -> Matrix {
        let d = self.assembled.d(n);
        let rows: Vec<usize> = self.range(n - 1, tau).collect();
        let cols: Vec<usize> = self.range(n, sigma).collect();
        d.select(&rows, &cols)
    }

    /// Keeps the balls in `keep` (with their blocks) and zeroes the rest.
    pub fn restrict_to(&self, keep: &[usize]) -> GradedComplex {
        let mut flags = vec![false; self.base.len()];
        for &k in keep {
            flags[k] = true;
        }
        let owner: BTreeMap<i32, Vec<usize>> = self.owner_map().into_iter().map(|(n, o)| (n, o.into_iter().filter(|&s| flags[s]).collect())).collect();
        let idx: BTreeMap<i32, Vec<usize>> = self.assembled.degrees().map(|n| (n, self.indices(n, keep))).collect();
        let c = self.assembled.restrict_basis(&idx);
        GradedComplex::split(self.base.clone(), self.variance, &c, &owner).expect("restriction of a graded complex")
    }

    /// Restriction to the pair `(Y, Z)`: balls of `Y` not in `Z`. `Y` and `Z` must be
    /// face-closed with `Z ⊆ Y`.
    pub fn restrict(&self, y: &[usize], z: &[usize]) -> Result<GradedComplex> {
        if !self.base.is_closed(y) || !self.base.is_closed(z) || z.iter().any(|c| !y.contains(c)) {
            return Err(Error::new(ErrorKind::NotAPair, "restriction needs face-closed Z ⊆ Y"));
        }
        let keep: Vec<usize> = y.iter().copied().filter(|c| !z.contains(c)).collect();
        Ok(self.restrict_to(&keep))
    }

    /// Assembly of the balls in `keep` only (a subquotient of the assembled complex).
    pub fn assemble_on(&self, keep: &[usize]) -> ChainComplex {
        let idx: BTreeMap<i32, Vec<usize>> = self.assembled.degrees().map(|n| (n, self.indices(n, keep))).collect();
        self.assembled.restrict_basis(&idx)
    }

    /// Direct sum, ball by ball.
    pub fn direct_sum(&self, other: &GradedComplex) -> Result<GradedComplex> {
        if self.base != other.base || self.variance != other.variance {
            return Err(Error::new(ErrorKind::BaseMismatch, "direct sum over different bases"));
        }
        let comps: Vec<ChainComplex> = self.comps.iter().zip(&other.comps).map(|(a, b)| a.direct_sum(b)).collect();
        let mut cross = BTreeMap::new();
        let lo = self.assembled.lo().min(other.assembled.lo());
        let hi = self.assembled.hi().max(other.assembled.hi());
        for tau in 0..self.base.len() {
            for sigma in 0..self.base.len() {
                if tau == sigma || !self.variance.allows(&self.base, tau, sigma) {
                    continue;
                }
                let mut m = BTreeMap::new();
                for n in lo..=hi {
                    let (a, b) = (self.block(tau, sigma, n), other.block(tau, sigma, n));
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let r = [self.comps[tau].rank(n - 1), other.comps[tau].rank(n - 1)];
                    let c = [self.comps[sigma].rank(n), other.comps[sigma].rank(n)];
                    m.insert(n, Matrix::block(&r, &c, &[(0, 0, &a), (1, 1, &b)]));
                }
                if !m.is_empty() {
                    cross.insert((tau, sigma), m);
                }
            }
        }
        GradedComplex::new(self.base.clone(), self.variance, comps, &cross)
    }

    /// A graded complex with the given per-ball complexes and no cross blocks.
    pub fn diagonal(base: Arc<BallComplex>, variance: Variance, comps: Vec<ChainComplex>) -> GradedComplex {
        GradedComplex::new(base, variance, comps, &BTreeMap::new()).expect("diagonal graded complex")
    }

    /// Supported on one ball.
    pub fn single(base: Arc<BallComplex>, variance: Variance, sigma: usize, c: ChainComplex) -> GradedComplex {
        let mut comps = vec![ChainComplex::zero(); base.len()];
        comps[sigma] = c;
        Self::diagonal(base, variance, comps)
    }

    /// A pseudorandom graded complex: random small per-ball complexes, conjugated by
    /// a random unipotent triangular basis change so that cross blocks appear.
    pub fn random(base: Arc<BallComplex>, variance: Variance, rng: &mut impl RngCore, degrees: core::ops::RangeInclusive<i32>) -> GradedComplex {
        let comps: Vec<ChainComplex> = (0..base.len()).map(|_| random_complex(rng, degrees.clone())).collect();
        let diag = Self::diagonal(base.clone(), variance, comps);
        let a = diag.assemble();
        let mut g = BTreeMap::new();
        let mut g_inv = BTreeMap::new();
        for n in a.degrees() {
            let owners = diag.owners(n);
            let mut trip = Vec::new();
            for (j, &sigma) in owners.iter().enumerate() {
                for (i, &tau) in owners.iter().enumerate() {
                    if tau != sigma && variance.allows(&base, tau, sigma) && rng.next_u32() % 3 == 0 {
                        trip.push((i, j, if rng.next_u32() % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
            let nil = Matrix::from_triplets(a.rank(n), a.rank(n), trip);
            let id = Matrix::identity(a.rank(n));
            let mut inv = id.clone();
            let mut pow = id.clone();
            for k in 1..=base.len() {
                pow = pow.mul(&nil);
                if pow.is_zero() {
                    break;
                }
                inv = inv.add_scaled(&pow, if k % 2 == 0 { 1 } else { -1 });
            }
            debug_assert_eq!(id.add(&nil).mul(&inv), id);
            g.insert(n, id.add(&nil));
            g_inv.insert(n, inv);
        }
        let c = a.conjugate(&g, &g_inv);
        GradedComplex::split(base, variance, &c, &diag.owner_map()).expect("conjugated graded complex")
    }
}

fn with_index_labels(c: ChainComplex) -> ChainComplex {
    if c.has_labels() || c.is_zero() {
        return c;
    }
    let labels = c.degrees().map(|n| (0..c.rank(n)).map(|k| format!("{k}")).collect()).collect();
    c.with_labels(labels)
}

fn random_complex(rng: &mut impl RngCore, degrees: core::ops::RangeInclusive<i32>) -> ChainComplex {
    // sum of elementary pieces Z (free) and Z --k--> Z, then a unimodular basis change
    let (lo, hi) = (*degrees.start(), *degrees.end());
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    let mut trips: BTreeMap<i32, Vec<(usize, usize, i64)>> = BTreeMap::new();
    let pieces = 1 + rng.next_u32() % 3;
    for _ in 0..pieces {
        let n = lo + (rng.next_u32() % (hi - lo + 1) as u32) as i32;
        if n > lo && rng.next_u32() % 2 == 0 {
            let k = [1, 1, 1, -1, 2][(rng.next_u32() % 5) as usize];
            let (i, j) = (*ranks.get(&(n - 1)).unwrap_or(&0), *ranks.get(&n).unwrap_or(&0));
            trips.entry(n).or_default().push((i, j, k));
            *ranks.entry(n - 1).or_insert(0) += 1;
            *ranks.entry(n).or_insert(0) += 1;
        } else {
            *ranks.entry(n).or_insert(0) += 1;
        }
    }
    let diffs: BTreeMap<i32, Matrix> = trips.into_iter().map(|(n, t)| (n, Matrix::from_triplets(ranks.get(&(n - 1)).copied().unwrap_or(0), ranks[&n], t))).collect();
    let c = ChainComplex::from_map(&ranks, &diffs).expect("elementary complex");
    let mut g = BTreeMap::new();
    let mut gi = BTreeMap::new();
    for n in c.degrees() {
        let (u, ui) = random_unimodular(rng, c.rank(n));
        g.insert(n, u);
        gi.insert(n, ui);
    }
    c.conjugate(&g, &gi)
}

/// A random unimodular matrix and its inverse, as a product of elementary moves.
pub fn random_unimodular(rng: &mut impl RngCore, n: usize) -> (Matrix, Matrix) {
    let mut u = Matrix::identity(n);
    let mut ui = Matrix::identity(n);
    if n < 2 {
        if n == 1 && rng.next_u32() % 2 == 0 {
            return (Matrix::scalar(1, -1), Matrix::scalar(1, -1));
        }
        return (u, ui);
    }
    for _ in 0..n + 1 {
        let i = (rng.next_u32() as usize) % n;
        let mut j = (rng.next_u32() as usize) % n;
        if i == j {
            j = (j + 1) % n;
        }
        let k = if rng.next_u32() % 2 == 0 { 1 } else { -1 };
        let e = Matrix::identity(n).add(&Matrix::from_triplets(n, n, [(i, j, k)]));
        let ei = Matrix::identity(n).add(&Matrix::from_triplets(n, n, [(i, j, -k)]));
        u = e.mul(&u);
        ui = ui.mul(&ei);
    }
    (u, ui)
}

/// A morphism of graded complexes over the same base, stored as its assembled map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMorphism {
    pub source: Arc<GradedComplex>,
    pub target: Arc<GradedComplex>,
    map: ChainMap,
}

impl GradedMorphism {
    /// Wraps an assembled map, checking the triangular support rule.
    pub fn new(source: Arc<GradedComplex>, target: Arc<GradedComplex>, map: ChainMap) -> Result<Self> {
        if source.base != target.base || source.variance != target.variance {
            return Err(Error::new(ErrorKind::BaseMismatch, "graded morphism between different bases or variances"));
        }
        let f = GradedMorphism { source, target, map };
        if let Some((tau, sigma)) = f.support_violation() {
            let b = &f.source.base;
            return Err(Error::new(ErrorKind::VarianceMismatch, format!("morphism block from {:?} to {:?} violates the support rule", b.id(sigma), b.id(tau))));
        }
        Ok(f)
    }

    /// Builds a morphism from blocks `(τ, σ) -> {n: C(σ)_n -> D(τ)_{n+s}}`.
    pub fn from_blocks(source: Arc<GradedComplex>, target: Arc<GradedComplex>, shift: i32, blocks: &BTreeMap<(usize, usize), BTreeMap<i32, Matrix>>) -> Result<Self> {
        let a = source.assemble();
        let b = target.assemble();
        let mut trips: BTreeMap<i32, Vec<(usize, usize, i64)>> = BTreeMap::new();
        for (&(tau, sigma), m) in blocks {
            for (&n, blk) in m {
                let (r0, c0) = (target.range(n + shift, tau).start, source.range(n, sigma).start);
                assert_eq!(blk.shape(), (target.component(tau).rank(n + shift), source.component(sigma).rank(n)), "block has wrong shape");
                trips.entry(n).or_default().extend(blk.triplets().map(|(i, j, x)| (r0 + i, c0 + j, x)));
            }
        }
        let comps = trips.into_iter().map(|(n, t)| (n, Matrix::from_triplets(b.rank(n + shift), a.rank(n), t))).collect();
        let map = ChainMap::from_components(a.clone(), b.clone(), shift, comps);
        Self::new(source, target, map)
    }

    pub fn identity(c: &Arc<GradedComplex>) -> Self {
        GradedMorphism { source: c.clone(), target: c.clone(), map: ChainMap::identity(c.assemble()) }
    }

    fn support_violation(&self) -> Option<(usize, usize)> {
        let base = &self.source.base;
        let v = self.source.variance;
        for (&n, m) in self.map.components() {
            let so = self.source.owners(n);
            let to = self.target.owners(n + self.map.shift);
            for (i, j, _) in m.triplets() {
                if !v.allows(base, to[i], so[j]) {
                    return Some((to[i], so[j]));
                }
            }
        }
        None
    }

    pub fn shift(&self) -> i32 {
        self.map.shift
    }

    /// The assembled map.
    pub fn assemble(&self) -> &ChainMap {
        &self.map
    }

    /// Block `C(σ)_n -> D(τ)_{n+s}`.
    pub fn block(&self, tau: usize, sigma: usize, n: i32) -> Matrix {
        let rows: Vec<usize> = self.target.range(n + self.shift(), tau).collect();
        let cols: Vec<usize> = self.source.range(n, sigma).collect();
        self.map.component(n).select(&rows, &cols)
    }

    /// The diagonal block at `σ` as a map of the ball components.
    pub fn diagonal(&self, sigma: usize) -> ChainMap {
        let c = self.source.component(sigma);
        let comps = c.degrees().map(|n| (n, self.block(sigma, sigma, n))).collect();
        ChainMap::from_components(c.clone(), self.target.component(sigma).clone(), self.shift(), comps)
    }

    pub fn compose(&self, other: &GradedMorphism) -> GradedMorphism {
        GradedMorphism { source: other.source.clone(), target: self.target.clone(), map: self.map.compose(&other.map) }
    }

    pub fn add_scaled(&self, other: &GradedMorphism, k: i64) -> GradedMorphism {
        GradedMorphism { source: self.source.clone(), target: self.target.clone(), map: self.map.add_scaled(&other.map, k) }
    }

    pub fn scale(&self, k: i64) -> GradedMorphism {
        GradedMorphism { source: self.source.clone(), target: self.target.clone(), map: self.map.scale(k) }
    }

    pub fn is_chain_map(&self) -> bool {
        self.map.is_chain_map()
    }

    /// Hom differential `d_D φ - (-1)^n φ d_C`; the result is again triangular.
    pub fn hom_boundary(&self) -> GradedMorphism {
        let n = self.shift();
        let (c, d) = (self.source.assemble(), self.target.assemble());
        let comps = c
            .degrees()
            .map(|p| {
                let a = d.d(p + n).mul(&self.map.component(p));
                let b = self.map.component(p - 1).mul(&c.d(p));
                (p, a.add_scaled(&b, if n % 2 == 0 { -1 } else { 1 }))
            })
            .collect();
        let map = ChainMap::from_components(c.clone(), d.clone(), n - 1, comps);
        GradedMorphism { source: self.source.clone(), target: self.target.clone(), map }
    }

    /// A pseudorandom triangular map of the given degree (not a chain map in general).
    pub fn random(source: &Arc<GradedComplex>, target: &Arc<GradedComplex>, shift: i32, rng: &mut impl RngCore) -> GradedMorphism {
        let base = &source.base;
        let v = source.variance;
        let (a, b) = (source.assemble(), target.assemble());
        let mut comps = BTreeMap::new();
        for n in a.degrees() {
            let so = source.owners(n);
            let to = target.owners(n + shift);
            let mut trip = Vec::new();
            for (j, &s) in so.iter().enumerate() {
                for (i, &t) in to.iter().enumerate() {
                    if v.allows(base, t, s) && rng.next_u32() % 3 == 0 {
                        trip.push((i, j, (rng.next_u32() % 5) as i64 - 2));
                    }
                }
            }
            comps.insert(n, Matrix::from_triplets(b.rank(n + shift), a.rank(n), trip));
        }
        let map = ChainMap::from_components(a.clone(), b.clone(), shift, comps);
        GradedMorphism { source: source.clone(), target: target.clone(), map }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::corpus;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_graded_complexes_are_triangular() {
        let base = Arc::new(corpus::square_cell());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for v in [Variance::Upper, Variance::Lower] {
            for _ in 0..5 {
                let c = GradedComplex::random(base.clone(), v, &mut rng, 0..=2);
                c.assemble().check().unwrap();
                let again = GradedComplex::split(base.clone(), v, c.assemble(), &c.owner_map()).unwrap();
                assert_eq!(again, c);
            }
        }
    }

    #[test]
    fn support_rule_enforced() {
        let base = Arc::new(corpus::interval());
        let (v0, e) = (base.find("v0").unwrap(), base.find("e").unwrap());
        let mut comps = vec![ChainComplex::zero(); 3];
        comps[v0] = ChainComplex::concentrated(0, 1);
        comps[e] = ChainComplex::concentrated(1, 1);
        let cross = BTreeMap::from([((v0, e), BTreeMap::from([(1, Matrix::identity(1))]))]);
        assert!(GradedComplex::new(base.clone(), Variance::Upper, comps.clone(), &cross).is_ok());
        let err = GradedComplex::new(base, Variance::Lower, comps, &cross).unwrap_err();
        assert_eq!(err.kind, ErrorKind::VarianceMismatch);
    }

    #[test]
    fn restriction_and_sums() {
        let base = Arc::new(corpus::square_cell());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = GradedComplex::random(base.clone(), Variance::Upper, &mut rng, 0..=1);
        let all: Vec<usize> = (0..base.len()).collect();
        assert_eq!(c.restrict(&all, &[]).unwrap(), c);
        let f = base.find("f").unwrap();
        let bd: Vec<usize> = base.closure(f).iter().copied().filter(|&x| x != f).collect();
        let r = c.restrict(base.closure(f), &bd).unwrap();
        assert_eq!(r.assemble().clone().drop_labels(), c.component(f).clone().drop_labels());
        assert_eq!(c.restrict(&bd, &all).unwrap_err().kind, ErrorKind::NotAPair);
        let d = GradedComplex::random(base.clone(), Variance::Upper, &mut rng, 0..=1);
        let s = c.direct_sum(&d).unwrap();
        assert_eq!(s.assemble().total_rank(), c.assemble().total_rank() + d.assemble().total_rank());
        assert_eq!(s.assemble().homology(), c.assemble().direct_sum(d.assemble()).homology());
    }

    #[test]
    fn hom_boundary_squares_to_zero() {
        let base = Arc::new(corpus::interval());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = Arc::new(GradedComplex::random(base.clone(), Variance::Lower, &mut rng, 0..=2));
        let d = Arc::new(GradedComplex::random(base, Variance::Lower, &mut rng, 0..=2));
        let f = GradedMorphism::random(&c, &d, 1, &mut rng);
        assert!(f.hom_boundary().hom_boundary().assemble().is_zero());
        assert!(GradedMorphism::new(c.clone(), d.clone(), f.assemble().clone()).is_ok());
    }
}

//! Functors from the face poset to chain complexes: the embedding `I`, the shift
//! `sh`, the `X`-graded tensor and the interval functors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::{GradedComplex, Variance};
use crate::chain::{tensor, tensor_maps, ChainComplex, ChainMap, Matrix};
use crate::complex::BallComplex;
use crate::error::{Error, ErrorKind, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorVariance {
    /// `σ ≤ τ` gives `F(σ) -> F(τ)`.
    Covariant,
    /// `σ ≤ τ` gives `F(τ) -> F(σ)`.
    Contravariant,
}

impl FunctorVariance {
    pub fn opposite(self) -> Self {
        match self {
            FunctorVariance::Covariant => FunctorVariance::Contravariant,
            FunctorVariance::Contravariant => FunctorVariance::Covariant,
        }
    }
}

/// A functor on the face poset of `X`, with a structure map for every comparable
/// pair `σ < τ`, stored under the key `(σ, τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorOverX {
    pub base: Arc<BallComplex>,
    pub variance: FunctorVariance,
    values: Vec<ChainComplex>,
    maps: BTreeMap<(usize, usize), ChainMap>,
}

impl FunctorOverX {
    /// Builds a functor from values and maps for all strictly comparable pairs
    /// (missing maps are zero).
    pub fn new(base: Arc<BallComplex>, variance: FunctorVariance, values: Vec<ChainComplex>, maps: BTreeMap<(usize, usize), ChainMap>) -> Self {
        assert_eq!(values.len(), base.len(), "one value per ball");
        FunctorOverX { base, variance, values, maps }
    }

    /// The constant functor with value `Z` in degree 0.
    pub fn constant(base: Arc<BallComplex>, variance: FunctorVariance) -> Self {
        let z = ChainComplex::concentrated(0, 1);
        let values = vec![z.clone(); base.len()];
        let mut maps = BTreeMap::new();
        for t in 0..base.len() {
            for &s in base.closure(t) {
                if s != t {
                    maps.insert((s, t), ChainMap::identity(&z));
                }
            }
        }
        FunctorOverX { base, variance, values, maps }
    }

    pub fn value(&self, sigma: usize) -> &ChainComplex {
        &self.values[sigma]
    }

    /// The structure map for `σ ≤ τ`: `F(σ) -> F(τ)` (covariant) or `F(τ) -> F(σ)`
    /// (contravariant).
    pub fn map(&self, sigma: usize, tau: usize) -> ChainMap {
        if sigma == tau {
            return ChainMap::identity(&self.values[sigma]);
        }
        assert!(self.base.le(sigma, tau), "structure maps exist for comparable pairs only");
        self.maps.get(&(sigma, tau)).cloned().unwrap_or_else(|| match self.variance {
            FunctorVariance::Covariant => ChainMap::zero(&self.values[sigma], &self.values[tau], 0),
            FunctorVariance::Contravariant => ChainMap::zero(&self.values[tau], &self.values[sigma], 0),
        })
    }

    /// Checks that all structure maps are chain maps and that they compose.
    pub fn check(&self) -> Result<()> {
        let x = &*self.base;
        for t in 0..x.len() {
            for &s in x.closure(t) {
                if s == t {
                    continue;
                }
                if !self.map(s, t).is_chain_map() {
                    return Err(Error::new(ErrorKind::NotDSquaredZero, format!("structure map {:?} -> {:?} is not a chain map", x.id(s), x.id(t))));
                }
                for &m in x.closure(t) {
                    if m == s || m == t || !x.le(s, m) {
                        continue;
                    }
                    let lhs = self.map(s, t);
                    let rhs = match self.variance {
                        FunctorVariance::Covariant => self.map(m, t).compose(&self.map(s, m)),
                        FunctorVariance::Contravariant => self.map(s, m).compose(&self.map(m, t)),
                    };
                    if lhs != rhs {
                        return Err(Error::new(ErrorKind::NotClosed, format!("composition law fails for {:?} < {:?} < {:?}", x.id(s), x.id(m), x.id(t))));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pointwise dual: values `T(F(σ))`, structure maps transposed, variance flipped.
    pub fn dualize(&self) -> FunctorOverX {
        let values = self.values.iter().map(|c| c.dual()).collect();
        let maps = self.maps.iter().map(|(&k, f)| (k, f.dual())).collect();
        FunctorOverX { base: self.base.clone(), variance: self.variance.opposite(), values, maps }
    }
}

/// Label-matching map between complexes whose basis labels are drawn from a common
/// set: a basis element goes to the element of the target with the same label, or
/// to zero.
pub fn label_map(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
    let comps = source
        .degrees()
        .map(|n| {
            let pos: BTreeMap<&String, usize> = target.labels(n).map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).unwrap_or_default();
            let src = source.labels(n).expect("labelled source");
            let trip: Vec<(usize, usize, i64)> = src.iter().enumerate().filter_map(|(j, s)| pos.get(s).map(|&i| (i, j, 1))).collect();
            (n, Matrix::from_triplets(target.rank(n), source.rank(n), trip))
        })
        .collect();
    ChainMap::from_components(source.clone(), target.clone(), 0, comps)
}

/// The embedding `I`: for `A^*(X)`, `I(C)(σ)` is the assembly over `σ̄` (covariant,
/// maps are inclusions); for `A_*(X)` it is the assembly over `st(σ)`
/// (contravariant).
pub fn embed_i(c: &GradedComplex) -> FunctorOverX {
    let base = c.base().clone();
    let v = c.variance();
    let values: Vec<ChainComplex> = (0..base.len()).map(|s| c.assemble_on(&v.region(&base, s))).collect();
    let mut maps = BTreeMap::new();
    for t in 0..base.len() {
        for &s in base.closure(t) {
            if s == t {
                continue;
            }
            let f = match v {
                Variance::Upper => label_map(&values[s], &values[t]),
                Variance::Lower => label_map(&values[t], &values[s]),
            };
            maps.insert((s, t), f);
        }
    }
    let variance = match v {
        Variance::Upper => FunctorVariance::Covariant,
        Variance::Lower => FunctorVariance::Contravariant,
    };
    FunctorOverX { base, variance, values, maps }
}

/// The shift `sh`: a contravariant functor goes to `C_*(X) ⊗ F` in `A^*(X)` with
/// `sh(F)(σ) = Σ^{|σ|} F(σ)`, a covariant one to `C^{-*}(X) ⊗ F` in `A_*(X)` with
/// `sh(F)(σ) = Σ^{-|σ|} F(σ)`. Cross blocks are `[τ:σ] F(σ -> τ)` along
/// codimension-one incidences.
pub fn shift(f: &FunctorOverX) -> GradedComplex {
    let x = &*f.base;
    let mut comps = Vec::with_capacity(x.len());
    let mut cross: BTreeMap<(usize, usize), BTreeMap<i32, Matrix>> = BTreeMap::new();
    let dimk = |s: usize| x.cell_dim(s) as i32;
    match f.variance {
        FunctorVariance::Contravariant => {
            for s in 0..x.len() {
                comps.push(f.value(s).suspend(dimk(s), true));
            }
            for s in 0..x.len() {
                for &(t, inc) in x.faces(s) {
                    let g = f.map(t, s);
                    let blocks: BTreeMap<i32, Matrix> = g.components().iter().map(|(&q, m)| (q + dimk(s), m.scale(inc))).collect();
                    if !blocks.is_empty() {
                        cross.insert((t, s), blocks);
                    }
                }
            }
            GradedComplex::new(f.base.clone(), Variance::Upper, comps, &cross).expect("shift of a functor")
        }
        FunctorVariance::Covariant => {
            for s in 0..x.len() {
                comps.push(f.value(s).suspend(-dimk(s), true));
            }
            for s in 0..x.len() {
                for &(t, inc) in x.cofaces(s) {
                    let g = f.map(s, t);
                    let blocks: BTreeMap<i32, Matrix> = g.components().iter().map(|(&q, m)| (q - dimk(s), m.scale(inc))).collect();
                    if !blocks.is_empty() {
                        cross.insert((t, s), blocks);
                    }
                }
            }
            GradedComplex::new(f.base.clone(), Variance::Lower, comps, &cross).expect("shift of a functor")
        }
    }
}

/// The `X`-graded tensor `C ⊗ F` with `(C ⊗ F)(σ) = C(σ) ⊗ F(σ)` and cross blocks
/// `d_{τσ} ⊗ F(σ -> τ)`. Lower complexes pair with covariant functors, upper ones
/// with contravariant functors.
pub fn graded_tensor(c: &GradedComplex, f: &FunctorOverX) -> Result<GradedComplex> {
    let ok = matches!((c.variance(), f.variance), (Variance::Lower, FunctorVariance::Covariant) | (Variance::Upper, FunctorVariance::Contravariant));
    if !ok {
        return Err(Error::new(ErrorKind::VarianceMismatch, "graded tensor needs lower/covariant or upper/contravariant"));
    }
    if c.base() != &f.base {
        return Err(Error::new(ErrorKind::BaseMismatch, "graded tensor over different bases"));
    }
    let x = c.base().clone();
    let comps: Vec<ChainComplex> = (0..x.len()).map(|s| tensor(c.component(s), f.value(s))).collect();
    let mut cross = BTreeMap::new();
    let lo = c.assemble().lo();
    let hi = c.assemble().hi();
    for s in 0..x.len() {
        for t in c.variance().region(&x, s) {
            if t == s {
                continue;
            }
            let blocks: BTreeMap<i32, Matrix> = (lo..=hi).map(|n| (n, c.block(t, s, n))).filter(|(_, m)| !m.is_zero()).collect();
            if blocks.is_empty() {
                continue;
            }
            let dts = ChainMap::from_components(c.component(s).clone(), c.component(t).clone(), -1, blocks);
            let fm = match f.variance {
                FunctorVariance::Covariant => f.map(s, t),
                FunctorVariance::Contravariant => f.map(t, s),
            };
            let b = tensor_maps(&dts, &fm);
            let comps_b: BTreeMap<i32, Matrix> = b.components().clone();
            if !comps_b.is_empty() {
                cross.insert((t, s), comps_b);
            }
        }
    }
    GradedComplex::new(x, c.variance(), comps, &cross)
}

/// Which interval functor to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    /// `D^σ_*(τ) = C_*([τ:σ])`, covariant, nonzero for `τ ≤ σ`.
    Chains,
    /// `D_σ^{-*}(τ) = C^{-*}([σ:τ])`, contravariant, nonzero for `τ ≥ σ`.
    Cochains,
}

/// The interval functors with their projection / restriction structure maps.
pub fn interval_functor(base: &Arc<BallComplex>, sigma: usize, kind: IntervalKind) -> FunctorOverX {
    let x = &**base;
    let values: Vec<ChainComplex> = (0..x.len())
        .map(|t| match kind {
            IntervalKind::Chains if x.le(t, sigma) => x.chain_complex_on(&x.interval(t, sigma).unwrap()),
            IntervalKind::Cochains if x.le(sigma, t) => x.chain_complex_on(&x.interval(sigma, t).unwrap()).dual(),
            _ => ChainComplex::zero(),
        })
        .collect();
    let mut maps = BTreeMap::new();
    for t in 0..x.len() {
        for &s in x.closure(t) {
            if s == t {
                continue;
            }
            let f = match kind {
                IntervalKind::Chains => label_map(&values[s], &values[t]),
                IntervalKind::Cochains => label_map(&values[t], &values[s]),
            };
            maps.insert((s, t), f);
        }
    }
    let variance = match kind {
        IntervalKind::Chains => FunctorVariance::Covariant,
        IntervalKind::Cochains => FunctorVariance::Contravariant,
    };
    FunctorOverX { base: base.clone(), variance, values, maps }
}

//! The chain duality `T = sh ∘ T_* ∘ I` on graded complexes, its counit, the
//! switch isomorphisms and the redistribution of `T²C(σ)` over intervals.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::complex::{GradedComplex, GradedMorphism, Variance};
use super::functor::{embed_i, graded_tensor, interval_functor, shift, IntervalKind};
use crate::chain::{koszul_c, sign, solve_signed_bijection, ChainComplex, ChainMap, EquivalenceVerdict, Matrix, TensorLayout};
use crate::error::{Error, ErrorKind, Result};

/// `T(C) = sh(T_*(I(C)))`, materialised. The variance is preserved.
pub fn chain_dual(c: &GradedComplex) -> GradedComplex {
    shift(&embed_i(c).dualize())
}

/// Degree of `I(C)(σ)` whose dual sits in degree `m` of `T(C)(σ)`.
fn i_degree(c: &GradedComplex, sigma: usize, m: i32) -> i32 {
    let k = c.base().cell_dim(sigma) as i32;
    match c.variance() {
        Variance::Upper => k - m,
        Variance::Lower => -m - k,
    }
}

/// Origin of the basis of `T(C)(σ)_m`: for each element, the ball `κ` of `C`, the
/// index in `C(κ)` and its degree.
pub fn provenance(c: &GradedComplex, sigma: usize, m: i32) -> Vec<(usize, usize, i32)> {
    let k = i_degree(c, sigma, m);
    let owners = c.owners(k);
    let region = c.variance().region(c.base(), sigma);
    c.indices(k, &region).into_iter().map(|g| (owners[g], g - c.range(k, owners[g]).start, k)).collect()
}

/// The per-ball dual with cross blocks transposed: the assembled dual split
/// over the opposite variance.
pub fn naive_dual(c: &GradedComplex) -> GradedComplex {
    let owners = c.owner_map().into_iter().map(|(n, o)| (-n, o)).collect();
    GradedComplex::split(c.base().clone(), c.variance().opposite(), &c.assemble().dual(), &owners).expect("dual of a graded complex")
}

/// `T(f) : T(D) -> T(C)` for `f : C -> D` of degree `n`. At `σ` it is
/// `(-1)^{n|σ|} (-1)^{n(n-1)/2}` times the transpose of `f` restricted to the
/// region of `σ`.
pub fn dual_morphism(f: &GradedMorphism) -> GradedMorphism {
    let (c, d) = (&*f.source, &*f.target);
    let n = f.shift();
    let tc = Arc::new(chain_dual(c));
    let td = Arc::new(chain_dual(d));
    let x = c.base();
    let mut blocks = BTreeMap::new();
    for s in 0..x.len() {
        let region = c.variance().region(x, s);
        let sg = sign(n as i64 * x.cell_dim(s) as i64) * koszul_c(n as i64);
        let mut per = BTreeMap::new();
        for m in td.component(s).degrees() {
            let k = i_degree(d, s, m);
            let rows = d.indices(k, &region);
            let cols = c.indices(k - n, &region);
            let blk = f.assemble().component(k - n).select(&rows, &cols).transpose().scale(sg);
            if !blk.is_zero() {
                per.insert(m, blk);
            }
        }
        if !per.is_empty() {
            blocks.insert((s, s), per);
        }
    }
    GradedMorphism::from_blocks(td, tc, n, &blocks).expect("dual of a graded morphism")
}

/// Sign of the counit at `σ`.
pub fn counit_sign(variance: Variance, dim: usize) -> i64 {
    let k = dim as i64;
    match variance {
        Variance::Upper => koszul_c(k),
        Variance::Lower => koszul_c(-k),
    }
}

/// The counit `e(C) : T²(C) -> C`. The summand of `T²C(σ)` coming from `TC(σ)`
/// maps onto the balls of `C` by the evaluation isomorphism with a sign depending
/// on `|σ|`; all other summands map to zero.
pub fn counit(c: &GradedComplex) -> GradedMorphism {
    let tc = chain_dual(c);
    let ttc = Arc::new(chain_dual(&tc));
    let x = c.base();
    let mut blocks: BTreeMap<(usize, usize), BTreeMap<i32, Vec<(usize, usize, i64)>>> = BTreeMap::new();
    for s in 0..x.len() {
        let eps = counit_sign(c.variance(), x.cell_dim(s));
        for n in ttc.component(s).degrees() {
            for (col, (rho, i, m)) in provenance(&tc, s, n).into_iter().enumerate() {
                if rho != s {
                    continue;
                }
                let (kappa, loc, deg) = provenance(c, s, m)[i];
                debug_assert_eq!(deg, n);
                blocks.entry((kappa, s)).or_default().entry(n).or_default().push((loc, col, eps));
            }
        }
    }
    let blocks = blocks
        .into_iter()
        .map(|((kappa, s), per)| {
            let per = per.into_iter().map(|(n, t)| (n, Matrix::from_triplets(c.component(kappa).rank(n), ttc.component(s).rank(n), t))).collect();
            ((kappa, s), per)
        })
        .collect();
    GradedMorphism::from_blocks(ttc, Arc::new(c.clone()), 0, &blocks).expect("counit")
}

fn check_tensor_element(c: &GradedComplex, phi: &GradedMorphism) -> Result<()> {
    if *phi.source != chain_dual(c) {
        return Err(Error::new(ErrorKind::ShapeMismatch, "element of C ⊗ D must be a map out of T(C)"));
    }
    Ok(())
}

/// The switch `C ⊗ D -> D ⊗ C`, `φ ↦ e(C) ∘ T(φ)`, on elements realised as
/// triangular maps `φ : T(C) -> D`.
pub fn switch(c: &GradedComplex, phi: &GradedMorphism) -> Result<GradedMorphism> {
    check_tensor_element(c, phi)?;
    Ok(counit(c).compose(&dual_morphism(phi)))
}

/// The switch computed entrywise: the entry from `(τ, y^*) ∈ T(D)(σ)` to
/// `(κ, x) ∈ C` is `(-1)^{m(m-1)/2}` with `m = n ± |σ|` times the entry of `φ` from
/// `(κ, x^*) ∈ T(C)(σ)` to `(τ, y)`.
pub fn switch_entrywise(c: &GradedComplex, phi: &GradedMorphism) -> Result<GradedMorphism> {
    check_tensor_element(c, phi)?;
    let d = &*phi.target;
    let tc = &*phi.source;
    let td = Arc::new(chain_dual(d));
    let n = phi.shift();
    let x = c.base();
    let dir = if c.variance() == Variance::Upper { 1 } else { -1 };
    let mut trips: BTreeMap<i32, Vec<(usize, usize, i64)>> = BTreeMap::new();
    for s in 0..x.len() {
        let sg = koszul_c(n as i64 + dir * x.cell_dim(s) as i64);
        let src: Vec<(i32, Vec<(usize, usize, i32)>)> = tc.component(s).degrees().map(|mb| (mb, provenance(c, s, mb))).collect();
        for m in td.component(s).degrees() {
            let a0 = td.range(m, s).start;
            for (a, (tau, yl, yd)) in provenance(d, s, m).into_iter().enumerate() {
                let yrow = d.range(yd, tau).start + yl;
                for (mb, prov) in &src {
                    if yd != mb + n {
                        continue;
                    }
                    let col = phi.assemble().component(*mb);
                    let b0 = tc.range(*mb, s).start;
                    for (b, &(kappa, xl, xd)) in prov.iter().enumerate() {
                        let v = col.get(yrow, b0 + b);
                        if v != 0 {
                            debug_assert_eq!(xd, m + n);
                            trips.entry(m).or_default().push((c.range(xd, kappa).start + xl, a0 + a, sg * v));
                        }
                    }
                }
            }
        }
    }
    let (src, tgt) = (td.assemble(), c.assemble());
    let comps = trips.into_iter().map(|(m, t)| (m, Matrix::from_triplets(tgt.rank(m + n), src.rank(m), t))).collect();
    GradedMorphism::new(td.clone(), Arc::new(c.clone()), ChainMap::from_components(src.clone(), tgt.clone(), n, comps))
}

/// Per-ball and assembled equivalence verdicts for a degree-0 morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCheck {
    pub per_ball: Vec<EquivalenceVerdict>,
    pub assembled: EquivalenceVerdict,
}

impl LocalCheck {
    pub fn all_local(&self) -> bool {
        self.per_ball.iter().all(|v| v.holds)
    }

    pub fn failing(&self) -> Vec<usize> {
        self.per_ball.iter().enumerate().filter(|(_, v)| !v.holds).map(|(s, _)| s).collect()
    }
}

/// A morphism is an equivalence iff every diagonal block is; both sides are
/// computed so they can be compared.
pub fn local_equivalence_check(f: &GradedMorphism) -> Result<LocalCheck> {
    let n = f.source.base().len();
    let per_ball = (0..n).map(|s| f.diagonal(s).equivalence()).collect::<Result<Vec<_>>>()?;
    Ok(LocalCheck { per_ball, assembled: f.assemble().equivalence()? })
}

/// The redistribution at one ball and what it certifies.
#[derive(Clone, Debug)]
pub struct Redistribution {
    pub sigma: usize,
    /// Signed permutation from the assembly of `T(C)` over the region of `σ` to the
    /// assembly of the per-ball duals tensored with the interval functor at `σ`.
    pub iso: ChainMap,
    /// The summand over `σ` itself includes as an equivalence.
    pub collapse: EquivalenceVerdict,
    /// The unsigned projection `T²C(σ) -> C(σ)` is an equivalence.
    pub projection: EquivalenceVerdict,
}

/// Regroups the summands of `T(C)` over the closure (upper) or star (lower) of
/// `σ` by the ball of `C` they come from, as the interval functor tensor.
pub fn redistribution(c: &GradedComplex, sigma: usize) -> Result<Redistribution> {
    let x = c.base();
    let v = c.variance();
    let region = v.region(x, sigma);
    let tc = chain_dual(c);
    let a = tc.assemble_on(&region);
    let kind = match v {
        Variance::Upper => IntervalKind::Chains,
        Variance::Lower => IntervalKind::Cochains,
    };
    let f = interval_functor(x, sigma, kind);
    let nd = naive_dual(c);
    let b = graded_tensor(&nd, &f)?;
    let mut perm: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for m in a.degrees() {
        let mut p = Vec::with_capacity(a.rank(m));
        for &rho in &region {
            for (kappa, xl, xd) in provenance(c, rho, m) {
                let fk = f.value(kappa);
                let q = match v {
                    Variance::Upper => x.cell_dim(rho) as i32,
                    Variance::Lower => -(x.cell_dim(rho) as i32),
                };
                let want = match v {
                    Variance::Upper => alloc::string::String::from(x.id(rho)),
                    Variance::Lower => alloc::format!("{}*", x.id(rho)),
                };
                let j = fk.labels(q).and_then(|l| l.iter().position(|s| *s == want)).expect("interval cell");
                let lay = TensorLayout::new(nd.component(kappa), fk);
                p.push(b.range(m, kappa).start + lay.index(-xd, xl, q, j));
            }
        }
        perm.insert(m, p);
    }
    let ba = b.assemble();
    let iso = solve_signed_bijection(&a, ba, &perm).ok_or_else(|| Error::new(ErrorKind::NoSolution, alloc::format!("no signed redistribution at {:?}", x.id(sigma))))?;
    let top = b.component(sigma);
    let comps = top
        .degrees()
        .map(|n| {
            let rows = b.range(n, sigma);
            let t: Vec<(usize, usize, i64)> = rows.enumerate().map(|(j, i)| (i, j, 1)).collect();
            (n, Matrix::from_triplets(ba.rank(n), top.rank(n), t))
        })
        .collect();
    let collapse = ChainMap::from_components(top.clone(), ba.clone(), 0, comps).equivalence()?;
    let e = counit(c);
    let projection = e.diagonal(sigma).scale(counit_sign(v, x.cell_dim(sigma))).equivalence()?;
    Ok(Redistribution { sigma, iso, collapse, projection })
}

/// The chain complex `Σ^{∓|σ|} T(C(D(σ)))` expected at `σ` of the dual of a
/// dissection, for comparisons.
pub fn shifted_dual(c: &ChainComplex, dim: usize, variance: Variance) -> ChainComplex {
    let k = dim as i32;
    match variance {
        Variance::Upper => c.dual().suspend(k, true),
        Variance::Lower => c.dual().suspend(-k, true),
    }
}

//! Symmetric and quadratic structures on graded complexes, ball by ball, and their
//! products over product complexes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::product::{product_sym_quad, product_sym_sym};
use super::structure::{verdict_of, PoincareVerdict, QuadraticStructure, SymmetricStructure};
use crate::chain::{koszul_c, sign, tensor, ChainComplex, ChainMap, Matrix, TensorLayout};
use crate::complex::BallComplex;
use crate::error::{Error, ErrorKind, Result};
use crate::graded::{chain_dual, provenance, GradedComplex, Variance};

/// Dimension of the piece over `σ` of an `n`-dimensional graded structure.
pub fn ball_dim(variance: Variance, n: i32, cell_dim: usize) -> i32 {
    match variance {
        Variance::Lower => n - cell_dim as i32,
        Variance::Upper => n + cell_dim as i32,
    }
}

/// Sign attached to `ξ ↦ ξ(a) b` at a ball of dimension `k`, `|a| = p`, `|b| = q`.
fn local_sign(variance: Variance, p: i32, q: i32, k: usize) -> i64 {
    let p = p as i64;
    let k = k as i64;
    let pp = match variance {
        Variance::Lower => p + k,
        Variance::Upper => p - k,
    };
    sign(pp * q as i64) * koszul_c(pp)
}

/// The diagonal block at `σ` of the duality map of a graded structure: the
/// degree-`n` map `T(C)(σ) -> C(σ)` sending the dual of `a ∈ C(σ)` to
/// `± Σ ξ(a) b` over the terms `a ⊗ b` of `φ_0(σ)`.
pub fn local_duality(c: &GradedComplex, tc: &GradedComplex, sigma: usize, n: i32, phi0: &[i64]) -> ChainMap {
    let comp = c.component(sigma);
    let src = tc.component(sigma);
    let k = c.base().cell_dim(sigma);
    let d = ball_dim(c.variance(), n, k);
    let lay = TensorLayout::new(comp, comp);
    let mut by_a: BTreeMap<(i32, usize), Vec<(i32, usize, i64)>> = BTreeMap::new();
    for (x, &v) in phi0.iter().enumerate() {
        if v != 0 {
            let (p, i, q, j) = lay.locate(d, x);
            by_a.entry((p, i)).or_default().push((q, j, v));
        }
    }
    let mut comps = BTreeMap::new();
    for m in src.degrees() {
        let mut trip = Vec::new();
        for (col, (kappa, loc, p)) in provenance(c, sigma, m).into_iter().enumerate() {
            if kappa != sigma {
                continue;
            }
            for &(q, j, v) in by_a.get(&(p, loc)).map_or(&[][..], |x| x.as_slice()) {
                debug_assert_eq!(q, m + n);
                trip.push((j, col, local_sign(c.variance(), p, q, k) * v));
            }
        }
        comps.insert(m, Matrix::from_triplets(comp.rank(m + n), src.rank(m), trip));
    }
    ChainMap::from_components(src.clone(), comp.clone(), n, comps)
}

/// An `n`-dimensional symmetric structure over a graded complex: over each ball `σ`
/// a structure of dimension `n ∓ |σ|` on `C(σ)`. Pieces over balls where only a
/// relative cycle is available are kept unchecked and reported as non-cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedStructure {
    complex: Arc<GradedComplex>,
    dim: i32,
    balls: Vec<SymmetricStructure>,
}

fn check_pieces<'a>(c: &GradedComplex, dim: i32, pieces: impl Iterator<Item = (&'a ChainComplex, i32)>) -> Result<()> {
    for (s, (comp, d)) in pieces.enumerate() {
        if s >= c.base().len() {
            return Err(Error::new(ErrorKind::ShapeMismatch, "more pieces than balls"));
        }
        let want = ball_dim(c.variance(), dim, c.base().cell_dim(s));
        if comp.clone().drop_labels() != c.component(s).clone().drop_labels() || d != want {
            return Err(Error::new(ErrorKind::ShapeMismatch, format!("piece over {:?} does not match its ball (dimension {d}, expected {want})", c.base().id(s))));
        }
    }
    Ok(())
}

impl GradedStructure {
    pub fn new(complex: Arc<GradedComplex>, dim: i32, balls: Vec<SymmetricStructure>) -> Result<Self> {
        if balls.len() != complex.base().len() {
            return Err(Error::new(ErrorKind::ShapeMismatch, "one piece per ball required"));
        }
        check_pieces(&complex, dim, balls.iter().map(|b| (b.complex(), b.dim())))?;
        Ok(GradedStructure { complex, dim, balls })
    }

    pub fn complex(&self) -> &Arc<GradedComplex> {
        &self.complex
    }

    pub fn base(&self) -> &Arc<BallComplex> {
        self.complex.base()
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn ball(&self, sigma: usize) -> &SymmetricStructure {
        &self.balls[sigma]
    }

    pub fn balls(&self) -> &[SymmetricStructure] {
        &self.balls
    }

    /// `φ_0(σ)` as a degree-`n` map `T(C)(σ) -> C(σ)`.
    pub fn local_duality(&self, sigma: usize) -> ChainMap {
        let tc = chain_dual(&self.complex);
        local_duality(&self.complex, &tc, sigma, self.dim, self.balls[sigma].phi(0))
    }

    pub fn local_verdict(&self, sigma: usize) -> PoincareVerdict {
        let tc = chain_dual(&self.complex);
        self.verdict_with(&tc, sigma)
    }

    fn verdict_with(&self, tc: &GradedComplex, sigma: usize) -> PoincareVerdict {
        let b = &self.balls[sigma];
        verdict_of(b.is_cycle(), || local_duality(&self.complex, tc, sigma, self.dim, b.phi(0)))
    }

    /// Verdicts for every ball, in ball order.
    pub fn local_verdicts(&self) -> Vec<PoincareVerdict> {
        let tc = chain_dual(&self.complex);
        (0..self.balls.len()).map(|s| self.verdict_with(&tc, s)).collect()
    }

    /// Balls at which the structure is not locally Poincaré.
    pub fn non_poincare_locus(&self) -> Vec<usize> {
        self.local_verdicts().iter().enumerate().filter(|(_, v)| !v.holds).map(|(s, _)| s).collect()
    }

    pub fn is_locally_poincare(&self) -> bool {
        self.non_poincare_locus().is_empty()
    }
}

/// The quadratic analogue of [`GradedStructure`].
///
/// Its symmetrization `(1 + T) ψ_0` is taken in the graded category, where `T` is
/// not ball-local. It is fixed on construction: ball by ball for pieces given
/// directly (exact over a point), and as `φ ⊗ (1 + T) ψ` for products with a
/// symmetric factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuadraticStructure {
    complex: Arc<GradedComplex>,
    dim: i32,
    balls: Vec<QuadraticStructure>,
    symmetric: GradedStructure,
}

impl GradedQuadraticStructure {
    pub fn new(complex: Arc<GradedComplex>, dim: i32, balls: Vec<QuadraticStructure>) -> Result<Self> {
        if balls.len() != complex.base().len() {
            return Err(Error::new(ErrorKind::ShapeMismatch, "one piece per ball required"));
        }
        check_pieces(&complex, dim, balls.iter().map(|b| (b.complex(), b.dim())))?;
        let symmetric = GradedStructure { complex: complex.clone(), dim, balls: balls.iter().map(|b| b.symmetrize(0)).collect() };
        Ok(GradedQuadraticStructure { complex, dim, balls, symmetric })
    }

    pub fn complex(&self) -> &Arc<GradedComplex> {
        &self.complex
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn ball(&self, sigma: usize) -> &QuadraticStructure {
        &self.balls[sigma]
    }

    pub fn balls(&self) -> &[QuadraticStructure] {
        &self.balls
    }

    /// The symmetrization, with `φ_0` only.
    pub fn symmetrize(&self) -> &GradedStructure {
        &self.symmetric
    }

    pub fn local_verdicts(&self) -> Vec<PoincareVerdict> {
        let v = self.symmetric.local_verdicts();
        v.into_iter().zip(&self.balls).map(|(v, b)| if b.is_cycle() { v } else { PoincareVerdict { holds: false, cycle: false, cone_homology: None } }).collect()
    }

    pub fn non_poincare_locus(&self) -> Vec<usize> {
        self.local_verdicts().iter().enumerate().filter(|(_, v)| !v.holds).map(|(s, _)| s).collect()
    }

    pub fn is_locally_poincare(&self) -> bool {
        self.non_poincare_locus().is_empty()
    }
}

/// The external tensor product over `L × K`: `(C ⊗ D)(σ × τ) = C(σ) ⊗ D(τ)` with the
/// cross blocks of `C` tensored with the identity and `(-1)^{|a|}` times the
/// identity tensored with the cross blocks of `D`.
pub fn external_tensor(c: &GradedComplex, d: &GradedComplex) -> Result<GradedComplex> {
    if c.variance() != d.variance() {
        return Err(Error::new(ErrorKind::VarianceMismatch, "external tensor of graded complexes of different variance"));
    }
    let (l, k) = (c.base(), d.base());
    let base = Arc::new(l.product(k));
    let idx = |a: usize, b: usize| l.product_index(k, &base, a, b);
    let mut comps = alloc::vec![ChainComplex::zero(); base.len()];
    for a in 0..l.len() {
        for b in 0..k.len() {
            comps[idx(a, b)] = tensor(c.component(a), d.component(b));
        }
    }
    let mut cross: BTreeMap<(usize, usize), BTreeMap<i32, Vec<(usize, usize, i64)>>> = BTreeMap::new();
    let pairs = |g: &GradedComplex| {
        let x = g.base();
        let mut out = Vec::new();
        for s in 0..x.len() {
            for t in 0..x.len() {
                if s != t && g.variance().allows(x, t, s) {
                    out.push((t, s));
                }
            }
        }
        out
    };
    for (a2, a) in pairs(c) {
        for b in 0..k.len() {
            let src = tensor(c.component(a), d.component(b));
            let (ls, lt) = (TensorLayout::new(c.component(a), d.component(b)), TensorLayout::new(c.component(a2), d.component(b)));
            for n in src.degrees() {
                for col in 0..src.rank(n) {
                    let (p, i, q, j) = ls.locate(n, col);
                    for &(r, v) in c.block(a2, a, p).col(i) {
                        cross.entry((idx(a2, b), idx(a, b))).or_default().entry(n).or_default().push((lt.index(p - 1, r, q, j), col, v));
                    }
                }
            }
        }
    }
    for (b2, b) in pairs(d) {
        for a in 0..l.len() {
            let src = tensor(c.component(a), d.component(b));
            let (ls, lt) = (TensorLayout::new(c.component(a), d.component(b)), TensorLayout::new(c.component(a), d.component(b2)));
            for n in src.degrees() {
                for col in 0..src.rank(n) {
                    let (p, i, q, j) = ls.locate(n, col);
                    for &(r, v) in d.block(b2, b, q).col(j) {
                        cross.entry((idx(a, b2), idx(a, b))).or_default().entry(n).or_default().push((lt.index(p, i, q - 1, r), col, sign(p as i64) * v));
                    }
                }
            }
        }
    }
    let cross = cross
        .into_iter()
        .map(|((t, s), per)| {
            let per = per.into_iter().map(|(n, trip)| (n, Matrix::from_triplets(comps[t].rank(n - 1), comps[s].rank(n), trip))).filter(|(_, m)| !m.is_zero()).collect();
            ((t, s), per)
        })
        .collect();
    GradedComplex::new(base, c.variance(), comps, &cross)
}

/// Position in the assembly of `external_tensor(c, d)` of each basis element of
/// `tensor(Ass C, Ass D)`, by degree. Assembly commutes with the external tensor
/// up to this permutation, without signs.
pub fn assembly_permutation(c: &GradedComplex, d: &GradedComplex, e: &GradedComplex) -> BTreeMap<i32, Vec<usize>> {
    let (ac, ad) = (c.assemble(), d.assemble());
    let lay = TensorLayout::new(ac, ad);
    let (oc, od) = (c.owner_map(), d.owner_map());
    let (l, k) = (c.base(), d.base());
    let mut out = BTreeMap::new();
    let t = tensor(ac, ad);
    for n in t.degrees() {
        let mut perm = Vec::with_capacity(t.rank(n));
        for x in 0..t.rank(n) {
            let (p, i, q, j) = lay.locate(n, x);
            let (a, b) = (oc[&p][i], od[&q][j]);
            let (li, lj) = (i - c.range(p, a).start, j - d.range(q, b).start);
            let ball = l.product_index(k, e.base(), a, b);
            let inner = TensorLayout::new(c.component(a), d.component(b)).index(p, li, q, lj);
            perm.push(e.range(n, ball).start + inner);
        }
        out.insert(n, perm);
    }
    out
}

/// The permutation of [`assembly_permutation`] as a chain isomorphism
/// `tensor(Ass C, Ass D) -> Ass(C ⊗ D)`.
pub fn assembly_isomorphism(c: &GradedComplex, d: &GradedComplex, e: &GradedComplex) -> ChainMap {
    let t = tensor(c.assemble(), d.assemble());
    let perm = assembly_permutation(c, d, e);
    let comps = perm.iter().map(|(&n, p)| (n, Matrix::from_triplets(e.assemble().rank(n), t.rank(n), p.iter().enumerate().map(|(x, &y)| (y, x, 1))))).collect();
    ChainMap::from_components(t, e.assemble().clone(), 0, comps)
}

fn product_base_check(a: &GradedComplex, b: &GradedComplex) -> Result<()> {
    if a.variance() != b.variance() {
        return Err(Error::new(ErrorKind::VarianceMismatch, "graded product of structures of different variance"));
    }
    Ok(())
}

/// `(C, φ) ⊗ (D, φ')` over `L × K`, ball by ball.
pub fn graded_product(a: &GradedStructure, b: &GradedStructure) -> Result<GradedStructure> {
    product_base_check(&a.complex, &b.complex)?;
    let e = Arc::new(external_tensor(&a.complex, &b.complex)?);
    graded_product_over(a, b, e)
}

/// As [`graded_product`], over a given external tensor `e` of the two complexes
/// (checked against the factors).
pub fn graded_product_over(a: &GradedStructure, b: &GradedStructure, e: Arc<GradedComplex>) -> Result<GradedStructure> {
    product_base_check(&a.complex, &b.complex)?;
    let (l, k) = (a.base(), b.base());
    if **e.base() != l.product(k) {
        return Err(Error::new(ErrorKind::BaseMismatch, "external tensor over a different base"));
    }
    let mut balls: Vec<Option<SymmetricStructure>> = alloc::vec![None; e.base().len()];
    for s in 0..l.len() {
        for t in 0..k.len() {
            let (x, y) = (a.ball(s), b.ball(t));
            let kk = x.truncation().min(y.truncation());
            balls[l.product_index(k, e.base(), s, t)] = Some(product_sym_sym(x, y, Some(kk))?);
        }
    }
    GradedStructure::new(e, a.dim + b.dim, balls.into_iter().map(|x| x.expect("every product ball")).collect())
}

/// `(C, φ) ⊗ (D, ψ)` over `L × K` with a quadratic second factor.
pub fn graded_product_quad(a: &GradedStructure, b: &GradedQuadraticStructure) -> Result<GradedQuadraticStructure> {
    product_base_check(&a.complex, &b.complex)?;
    let e = Arc::new(external_tensor(&a.complex, &b.complex)?);
    let (l, k) = (a.base(), b.complex.base());
    let mut balls: Vec<Option<QuadraticStructure>> = alloc::vec![None; e.base().len()];
    for s in 0..l.len() {
        for t in 0..k.len() {
            balls[l.product_index(k, e.base(), s, t)] = Some(product_sym_quad(a.ball(s), b.ball(t))?);
        }
    }
    let mut out = GradedQuadraticStructure::new(e.clone(), a.dim + b.dim, balls.into_iter().map(|x| x.expect("every product ball")).collect())?;
    out.symmetric = graded_product_over(a, &b.symmetric, e)?;
    Ok(out)
}

/// A structure over a one-ball base, i.e. an ordinary structure regarded as graded.
pub fn over_point(s: &SymmetricStructure) -> GradedStructure {
    let base = Arc::new(crate::complex::corpus::point());
    let c = Arc::new(GradedComplex::single(base, Variance::Lower, 0, s.complex().clone()));
    let piece = SymmetricStructure::from_chains(c.component(0).clone(), s.dim(), s.chains().to_vec()).expect("same shape");
    GradedStructure::new(c, s.dim(), alloc::vec![piece]).expect("one ball")
}

pub fn quadratic_over_point(q: &QuadraticStructure) -> GradedQuadraticStructure {
    let base = Arc::new(crate::complex::corpus::point());
    let c = Arc::new(GradedComplex::single(base, Variance::Lower, 0, q.complex().clone()));
    let piece = QuadraticStructure::from_chains(c.component(0).clone(), q.dim(), q.chains().to_vec()).expect("same shape");
    GradedQuadraticStructure::new(c, q.dim(), alloc::vec![piece]).expect("one ball")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::corpus;
    use crate::graded::{dissected_cosubdivision, dissected_subdivision};
    use crate::signatures::{dissected_signature, ManifoldComplex};
    use crate::structured::{e8_refinement, hyperbolic, quadratic_from_form, symmetric_from_form};
    use alloc::vec;

    fn circle() -> GradedStructure {
        dissected_signature(&ManifoldComplex::closed(Arc::new(corpus::circle3())).unwrap()).unwrap().structure
    }

    #[test]
    fn ball_dims() {
        assert_eq!(ball_dim(Variance::Lower, 2, 1), 1);
        assert_eq!(ball_dim(Variance::Upper, 2, 1), 3);
    }

    #[test]
    fn external_tensor_assembles_to_tensor() {
        let (c, _) = dissected_subdivision(&Arc::new(corpus::circle3()));
        let (d, _) = dissected_subdivision(&Arc::new(corpus::interval()));
        let e = external_tensor(&c, &d).unwrap();
        assert_eq!(e.base().len(), 18);
        let f = assembly_isomorphism(&c, &d, &e);
        assert!(f.is_chain_map());
        assert!(f.is_isomorphism());
        for (n, p) in assembly_permutation(&c, &d, &e) {
            let mut q = p.clone();
            q.sort_unstable();
            assert_eq!(q, (0..e.assemble().rank(n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn external_tensor_rejects_mixed_variance() {
        let x = Arc::new(corpus::interval());
        let (c, _) = dissected_subdivision(&x);
        let (u, _) = dissected_cosubdivision(&x);
        assert_eq!(external_tensor(&c, &u).unwrap_err().kind, ErrorKind::VarianceMismatch);
    }

    #[test]
    fn product_of_dissected_circles() {
        let a = circle();
        let p = graded_product(&a, &a).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.balls().len(), 36);
        assert!(p.is_locally_poincare());
    }

    #[test]
    fn point_is_a_unit() {
        let a = circle();
        let one = over_point(&symmetric_from_form(&Matrix::from_rows(&[vec![1]])).unwrap());
        let p = graded_product(&one, &a).unwrap();
        assert_eq!(p.balls().len(), a.balls().len());
        for s in 0..a.balls().len() {
            let t = p.base().find(&alloc::format!("(p,{})", a.base().id(s))).unwrap();
            assert_eq!(p.ball(t).chains()[0], a.ball(s).chains()[0]);
        }
        assert_eq!(p.local_verdicts(), a.local_verdicts());
    }

    #[test]
    fn over_point_recovers_the_ungraded_product() {
        let h = symmetric_from_form(&Matrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
        let g = graded_product(&over_point(&h), &over_point(&h)).unwrap();
        let direct = crate::structured::product_sym_sym(&h, &h, None).unwrap();
        assert_eq!(g.ball(0).chains(), direct.chains());
        assert!(g.is_locally_poincare());
    }

    #[test]
    fn base_mismatch() {
        let a = circle();
        let (c, _) = dissected_subdivision(&Arc::new(corpus::interval()));
        let e = Arc::new(external_tensor(&c, &c).unwrap());
        assert_eq!(graded_product_over(&a, &a, e).unwrap_err().kind, ErrorKind::BaseMismatch);
    }

    #[test]
    fn quadratic_graded_products() {
        let a = circle();
        for (q, ok) in [(e8_refinement(), true), (Matrix::from_rows(&[vec![0, 1], vec![0, 0]]), true), (hyperbolic(), false), (Matrix::from_rows(&[vec![1]]), false)] {
            let p = graded_product_quad(&a, &quadratic_over_point(&quadratic_from_form(&q).unwrap())).unwrap();
            assert_eq!(p.dim(), 1);
            assert_eq!(p.is_locally_poincare(), ok);
            assert_eq!(p.symmetrize().is_locally_poincare(), ok);
            assert_eq!(p.symmetrize().dim(), 1);
        }
    }

    #[test]
    fn pieces_must_fit_their_balls() {
        let a = circle();
        let mut balls = a.balls().to_vec();
        balls.swap(0, 3);
        assert_eq!(GradedStructure::new(a.complex().clone(), 1, balls).unwrap_err().kind, ErrorKind::ShapeMismatch);
        assert!(GradedStructure::new(a.complex().clone(), 1, a.balls()[..2].to_vec()).is_err());
    }
}

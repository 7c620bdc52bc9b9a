//! The product formula for dissected signatures, checked ball by ball.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::dissected::{dissected_signature, dissected_signature_with, DissectedSignature};
use super::manifold::{fundamental_class, ManifoldComplex};
use crate::chain::{sign, solve_chain_homotopy, tensor_square_vec, ChainMap, Matrix, TensorLayout};
use crate::complex::{BallComplex, DerivedSubdivision};
use crate::error::Result;
use crate::graded::{chain_dual, GradedComplex};
use crate::structured::{graded_product, local_duality, GradedStructure};

/// The product class `z × z'` on the top cells of `L × K`.
pub fn product_class(l: &BallComplex, k: &BallComplex, z: &[i64], w: &[i64]) -> Vec<i64> {
    let p = l.product(k);
    let mut out = alloc::vec![0i64; p.cells_of_dim(p.dim()).len()];
    for &a in l.cells_of_dim(l.dim()) {
        for &b in k.cells_of_dim(k.dim()) {
            out[p.position(l.product_index(k, &p, a, b))] = z[l.position(a)] * w[k.position(b)];
        }
    }
    out
}

/// The factors `(σ, τ)` of every cell of `L × K`, by product index.
pub fn factor_cells(l: &BallComplex, k: &BallComplex, p: &BallComplex) -> Vec<(usize, usize)> {
    let mut split = alloc::vec![(0usize, 0usize); p.len()];
    for x in 0..l.len() {
        for y in 0..k.len() {
            split[l.product_index(k, p, x, y)] = (x, y);
        }
    }
    split
}

/// Alexander–Whitney comparison at the product ball `σ × τ`: a flag
/// `(σ_0, τ_0) < ... < (σ_p, τ_p)` starting at `(σ, τ)` goes to
/// `Σ_i (σ_0 .. σ_i) ⊗ (τ_i .. τ_p)` over the terms with both sides strictly
/// increasing and `τ_i = τ`.
pub fn alexander_whitney(lhs: &GradedComplex, lsub: &DerivedSubdivision, rhs: &GradedComplex, a: (&GradedComplex, &DerivedSubdivision), b: (&GradedComplex, &DerivedSubdivision), ball: usize) -> ChainMap {
    let (ga, sa) = a;
    let (gb, sb) = b;
    let split = factor_cells(ga.base(), gb.base(), lhs.base());
    let (sigma, tau) = split[ball];
    let src = lhs.component(ball);
    let tgt = rhs.component(ball);
    let lay = TensorLayout::new(ga.component(sigma), gb.component(tau));
    let local = |g: &GradedComplex, s: &DerivedSubdivision, flag: &[usize], owner: usize| {
        let d = flag.len() as i32 - 1;
        s.simplicial.position(flag).map(|i| i - g.range(d, owner).start)
    };
    let mut comps = BTreeMap::new();
    for n in src.degrees() {
        let mut trip = Vec::new();
        let flags = &lsub.simplicial.simplices(n as usize);
        for (col, x) in lhs.range(n, ball).enumerate() {
            let f: Vec<(usize, usize)> = flags[x].iter().map(|&c| split[c]).collect();
            for i in 0..f.len() {
                let front: Vec<usize> = f[..=i].iter().map(|c| c.0).collect();
                let back: Vec<usize> = f[i..].iter().map(|c| c.1).collect();
                if back[0] != tau || front.windows(2).any(|w| w[0] == w[1]) || back.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let u = local(ga, sa, &front, sigma).expect("front flag");
                let v = local(gb, sb, &back, tau).expect("back flag");
                trip.push((lay.index(i as i32, u, n - i as i32, v), col, 1));
            }
        }
        comps.insert(n, Matrix::from_triplets(tgt.rank(n), src.rank(n), trip));
    }
    ChainMap::from_components(src.clone(), tgt.clone(), 0, comps)
}

/// Verdicts at one product ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductBallRecord {
    pub ball: usize,
    /// The comparison map is a chain equivalence.
    pub comparison: bool,
    /// The transported duality map is chain homotopic to the product one.
    pub homotopic: bool,
    /// The transported structure equals the product structure exactly.
    pub exact: bool,
}

impl ProductBallRecord {
    pub fn passes(&self) -> bool {
        self.comparison && self.homotopic
    }
}

/// Both sides of `ssign(L × K) = ssign(L) ⊗ ssign(K)`.
#[derive(Clone, Debug)]
pub struct ProductCheck {
    pub left: DissectedSignature,
    pub right_factors: (DissectedSignature, DissectedSignature),
    pub right: GradedStructure,
    factors: Vec<(usize, usize)>,
}

/// Builds both sides for closed orientable `M` over `L` and `N` over `K`.
pub fn check_product_formula(m: &ManifoldComplex, n: &ManifoldComplex) -> Result<ProductCheck> {
    let a = dissected_signature(m)?;
    let b = dissected_signature(n)?;
    let (l, k) = (m.complex(), n.complex());
    let p = ManifoldComplex::closed(Arc::new(l.product(k)))?;
    let z = product_class(l, k, &a.class, &b.class);
    debug_assert!(fundamental_class(&p).map(|w| w.iter().zip(&z).all(|(x, y)| x.abs() == y.abs())).unwrap_or(false));
    let left = dissected_signature_with(&p, z, p.dim() + 1)?;
    let right = graded_product(&a.structure, &b.structure)?;
    let factors = factor_cells(l, k, right.base());
    Ok(ProductCheck { left, right_factors: (a, b), right, factors })
}

impl ProductCheck {
    pub fn base(&self) -> &Arc<BallComplex> {
        self.right.base()
    }

    pub fn comparison(&self, ball: usize) -> ChainMap {
        let (a, b) = &self.right_factors;
        alexander_whitney(self.left.complex(), &self.left.subdivision, self.right.complex(), (a.complex(), &a.subdivision), (b.complex(), &b.subdivision), ball)
    }

    /// `(-1)^{|τ| (m - |σ|)}` at `σ × τ` for `m = dim L`: the orientation of
    /// `D(σ × τ)` against `D(σ) × D(τ)`.
    pub fn orientation_sign(&self, ball: usize) -> i64 {
        let (a, b) = &self.right_factors;
        let (l, k) = (a.manifold.complex(), b.manifold.complex());
        let (s, t) = self.factors[ball];
        sign((k.cell_dim(t) * (l.dim() - l.cell_dim(s))) as i64)
    }

    /// Factors `(σ, τ)` of a product ball.
    pub fn factors(&self, ball: usize) -> (usize, usize) {
        self.factors[ball]
    }

    pub fn ball_record(&self, ball: usize) -> ProductBallRecord {
        self.record_with(ball, self.orientation_sign(ball))
    }

    fn record_with(&self, ball: usize, eps: i64) -> ProductBallRecord {
        let f = self.comparison(ball);
        let comparison = f.is_chain_map() && f.is_chain_equivalence();
        let lp = self.left.structure.ball(ball);
        let rp = self.right.ball(ball);
        let deg = rp.dim();
        let moved: Vec<Vec<i64>> = (0..=lp.truncation().min(rp.truncation())).map(|s| tensor_square_vec(&f, deg + s as i32, lp.phi(s)).into_iter().map(|v| eps * v).collect()).collect();
        let exact = moved.iter().enumerate().all(|(s, v)| v.as_slice() == rp.phi(s));
        let e = self.right.complex();
        let tc = chain_dual(e);
        let n = self.right.dim();
        let t = local_duality(e, &tc, ball, n, &moved[0]);
        let r = local_duality(e, &tc, ball, n, rp.phi(0));
        let homotopic = comparison && t.is_chain_map() && r.is_chain_map() && solve_chain_homotopy(&t, &r).is_some();
        ProductBallRecord { ball, comparison, homotopic, exact }
    }

    pub fn records(&self) -> Vec<ProductBallRecord> {
        (0..self.base().len()).map(|b| self.ball_record(b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::corpus;

    fn closed(x: BallComplex) -> ManifoldComplex {
        ManifoldComplex::closed(Arc::new(x)).unwrap()
    }

    #[test]
    fn point_times_circle_is_exact() {
        let c = check_product_formula(&closed(corpus::point()), &closed(corpus::circle3())).unwrap();
        let r = c.records();
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|x| x.passes() && x.exact), "{r:?}");
    }

    #[test]
    fn point_times_point() {
        let c = check_product_formula(&closed(corpus::point()), &closed(corpus::point())).unwrap();
        assert_eq!(c.records(), alloc::vec![ProductBallRecord { ball: 0, comparison: true, homotopic: true, exact: true }]);
    }

    #[test]
    fn torus_product_formula() {
        let c = check_product_formula(&closed(corpus::circle3()), &closed(corpus::circle3())).unwrap();
        let r = c.records();
        assert_eq!(r.len(), 36);
        assert!(r.iter().all(|x| x.passes()), "{r:?}");
        assert!(c.right.is_locally_poincare());
        let exact = r.iter().filter(|x| x.exact).count();
        assert_eq!(exact, 36);
    }

    #[test]
    fn wrong_orientation_sign_is_detected() {
        let c = check_product_formula(&closed(corpus::circle3()), &closed(corpus::circle3())).unwrap();
        for b in 0..c.base().len() {
            let r = c.record_with(b, -c.orientation_sign(b));
            assert!(r.comparison && !r.homotopic && !r.exact, "{r:?}");
        }
    }
}

//! Suspension as the product with the relative signature of `(D^k, S^{k-1})`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::dissected::{relative_dissected_signature, DissectedSignature};
use super::manifold::ManifoldComplex;
use super::product::factor_cells;
use crate::chain::{tensor, ChainComplex, ChainMap, Matrix, TensorLayout};
use crate::complex::corpus;
use crate::error::{Error, ErrorKind, Result};
use crate::structured::{graded_product, graded_product_quad, GradedQuadraticStructure, GradedStructure, PoincareVerdict};

/// The disk `D^k` as the `k`-fold power of the interval, with its relative signature.
pub fn disk_signature(k: usize) -> Result<DissectedSignature> {
    if k == 0 {
        return Err(Error::new(ErrorKind::ShapeMismatch, "suspension needs k >= 1"));
    }
    let m = ManifoldComplex::with_boundary(Arc::new(corpus::cube(k)), None)?;
    relative_dissected_signature(&m)
}

/// A structure over `D^k × K` from a structure over `K`.
#[derive(Clone, Debug)]
pub struct Suspension<S> {
    pub k: usize,
    pub disk: DissectedSignature,
    pub structure: S,
    /// Balls of `S^{k-1} × K`, in index order.
    pub boundary: Vec<usize>,
}

fn boundary_balls(disk: &DissectedSignature, base: &crate::complex::BallComplex, k: &crate::complex::BallComplex) -> Vec<usize> {
    let d = disk.manifold.complex();
    factor_cells(d, k, base).iter().enumerate().filter(|(_, &(s, _))| disk.manifold.in_boundary(s)).map(|(b, _)| b).collect()
}

/// `(D^k, S^{k-1}) ⊗ (C, φ)` over `D^k × K`.
pub fn suspension_product(s: &GradedStructure, k: usize) -> Result<Suspension<GradedStructure>> {
    let disk = disk_signature(k)?;
    let structure = graded_product(&disk.structure, s)?;
    let boundary = boundary_balls(&disk, structure.base(), s.base());
    Ok(Suspension { k, disk, structure, boundary })
}

/// The quadratic version of [`suspension_product`].
pub fn suspension_product_quad(s: &GradedQuadraticStructure, k: usize) -> Result<Suspension<GradedQuadraticStructure>> {
    let disk = disk_signature(k)?;
    let structure = graded_product_quad(&disk.structure, s)?;
    let boundary = boundary_balls(&disk, structure.complex().base(), s.complex().base());
    Ok(Suspension { k, disk, structure, boundary })
}

impl<S> Suspension<S> {
    /// Balls at which a verdict is required.
    pub fn required(&self, ball: usize) -> bool {
        self.boundary.binary_search(&ball).is_err()
    }

    /// `C((D^k)', (S^{k-1})')` and the subdivided relative fundamental class in it.
    pub fn disk_pair(&self) -> (ChainComplex, Vec<i64>) {
        let m = &self.disk.manifold;
        let sub = &self.disk.subdivision;
        let (q, keep) = sub.simplicial.chain_complex_where(|f| !m.in_boundary(f[f.len() - 1]));
        let sd = sub.subdivision_map().component(self.k as i32).mul_vec(&self.disk.class);
        let z = keep.get(&(self.k as i32)).map_or(Vec::new(), |v| v.iter().map(|&i| sd[i]).collect());
        (q, z)
    }

    /// The comparison `Σ^k A -> C((D^k)', (S^{k-1})') ⊗ A`, `x ↦ z ⊗ x`, for the
    /// assembly `A` of the input.
    pub fn interior_comparison(&self, input: &ChainComplex) -> ChainMap {
        let (q, z) = self.disk_pair();
        let k = self.k as i32;
        let src = input.suspend(k, true);
        let tgt = tensor(&q, input);
        let lay = TensorLayout::new(&q, input);
        let comps: BTreeMap<i32, Matrix> = src
            .degrees()
            .map(|n| {
                let trip = (0..input.rank(n - k)).flat_map(|j| z.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(i, &v)| (i, j, v)).collect::<Vec<_>>()).map(|(i, j, v)| (lay.index(k, i, n - k, j), j, v));
                (n, Matrix::from_triplets(tgt.rank(n), src.rank(n), trip))
            })
            .collect();
        ChainMap::from_components(src, tgt, 0, comps)
    }

    /// The interior comparison is a chain equivalence (its cone is acyclic).
    pub fn interior_verdict(&self, input: &ChainComplex) -> Result<PoincareVerdict> {
        let f = self.interior_comparison(input);
        if !f.is_chain_map() {
            return Ok(PoincareVerdict { holds: false, cycle: false, cone_homology: None });
        }
        let e = f.equivalence()?;
        Ok(PoincareVerdict { holds: e.holds, cycle: true, cone_homology: Some(e.cone_homology) })
    }
}

impl Suspension<GradedStructure> {
    pub fn verdicts(&self) -> Vec<PoincareVerdict> {
        self.structure.local_verdicts()
    }

    /// Poincaré exactly at the balls off `S^{k-1} × K`.
    pub fn locus_matches(&self) -> bool {
        self.structure.non_poincare_locus() == self.boundary
    }
}

impl Suspension<GradedQuadraticStructure> {
    pub fn verdicts(&self) -> Vec<PoincareVerdict> {
        self.structure.local_verdicts()
    }

    pub fn locus_matches(&self) -> bool {
        let bad: Vec<usize> = self.verdicts().iter().enumerate().filter(|(_, v)| !v.holds).map(|(b, _)| b).collect();
        bad == self.boundary
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signatures::dissected_signature;
    use alloc::vec;
    use crate::structured::{e8_refinement, over_point, quadratic_from_form, quadratic_over_point, symmetric_from_form};

    #[test]
    fn suspended_point() {
        let s = over_point(&symmetric_from_form(&Matrix::from_rows(&[vec![1]])).unwrap());
        let t = suspension_product(&s, 1).unwrap();
        assert_eq!(t.structure.dim(), 1);
        assert_eq!(t.structure.base().len(), 3);
        assert_eq!(t.boundary.len(), 2);
        assert!(t.locus_matches());
        let e = t.structure.base().find("(e,p)").unwrap();
        assert!(t.required(e));
        let v = t.interior_verdict(s.complex().assemble()).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn suspended_circle() {
        let c = dissected_signature(&ManifoldComplex::closed(Arc::new(corpus::circle3())).unwrap()).unwrap();
        let t = suspension_product(&c.structure, 1).unwrap();
        assert_eq!(t.structure.base().len(), 18);
        assert_eq!(t.structure.dim(), 2);
        assert_eq!(t.boundary.len(), 12);
        assert!(t.locus_matches());
        assert!(t.interior_verdict(c.complex().assemble()).unwrap().holds);
    }

    #[test]
    fn double_suspension_of_a_point() {
        let s = over_point(&symmetric_from_form(&Matrix::from_rows(&[vec![1]])).unwrap());
        let t = suspension_product(&s, 2).unwrap();
        assert_eq!(t.structure.dim(), 2);
        assert_eq!(t.boundary.len(), 8);
        assert!(t.locus_matches());
        assert!(t.interior_verdict(s.complex().assemble()).unwrap().holds);
    }

    #[test]
    fn quadratic_suspension() {
        let q = quadratic_from_form(&e8_refinement()).unwrap();
        let t = suspension_product_quad(&quadratic_over_point(&q), 1).unwrap();
        assert_eq!(t.structure.dim(), 1);
        assert!(t.locus_matches());
    }

    #[test]
    fn non_poincare_input_fails_inside() {
        let s = over_point(&symmetric_from_form(&Matrix::from_rows(&[vec![2]])).unwrap());
        let t = suspension_product(&s, 1).unwrap();
        assert!(!t.locus_matches());
        assert_eq!(t.structure.non_poincare_locus().len(), 3);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(disk_signature(0).is_err());
    }
}

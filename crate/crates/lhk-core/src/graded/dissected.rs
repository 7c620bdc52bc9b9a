//! Dual-cell dissections of the derived subdivision.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::complex::{GradedComplex, Variance};
use crate::complex::{BallComplex, DerivedSubdivision};

/// Owner of each simplex of `X'` by degree: the flag `σ_0 < ... < σ_l` lies over `σ_0`.
fn flag_owners(sub: &DerivedSubdivision) -> BTreeMap<i32, Vec<usize>> {
    let s = &sub.simplicial;
    (0..=s.dim()).map(|d| (d as i32, s.simplices(d).iter().map(|f| f[0]).collect())).collect()
}

/// `C_*(X')` over `A_*(X)` with `D(σ) = C_*(D(σ, X), ∂D(σ, X))`.
pub fn dissected_subdivision(x: &Arc<BallComplex>) -> (GradedComplex, DerivedSubdivision) {
    let sub = DerivedSubdivision::new(x.clone());
    let c = sub.chain_complex();
    let g = GradedComplex::split(x.clone(), Variance::Lower, &c, &flag_owners(&sub)).expect("flags are grouped by their first cell");
    (g, sub)
}

/// `C^{-*}(X')` over `A^*(X)`, the dual dissection.
pub fn dissected_cosubdivision(x: &Arc<BallComplex>) -> (GradedComplex, DerivedSubdivision) {
    let sub = DerivedSubdivision::new(x.clone());
    let c = sub.chain_complex().dual();
    let owners = flag_owners(&sub).into_iter().map(|(n, o)| (-n, o)).collect();
    let g = GradedComplex::split(x.clone(), Variance::Upper, &c, &owners).expect("flags are grouped by their first cell");
    (g, sub)
}

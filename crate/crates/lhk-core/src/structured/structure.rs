//! Symmetric and quadratic structures on integer chain complexes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::chain::tensor::{tensor_boundary, tensor_square_vec};
use crate::chain::{koszul_c, sign, slant, switch_matrix, ChainComplex, ChainMap, HomologyProfile, Matrix, TensorLayout};
use crate::error::{Error, ErrorKind, Result};

/// Outcome of a Poincaré test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareVerdict {
    pub holds: bool,
    /// Whether the structure satisfies its cycle relations; a non-cycle is never Poincaré.
    pub cycle: bool,
    /// Homology of the cone of the duality map, when it is a chain map.
    pub cone_homology: Option<HomologyProfile>,
}

pub(crate) fn verdict_of(cycle: bool, f: impl FnOnce() -> ChainMap) -> PoincareVerdict {
    if !cycle {
        return PoincareVerdict { holds: false, cycle, cone_homology: None };
    }
    match f().equivalence() {
        Ok(v) => PoincareVerdict { holds: v.holds, cycle, cone_homology: Some(v.cone_homology) },
        Err(_) => PoincareVerdict { holds: false, cycle, cone_homology: None },
    }
}

/// `T` applied to a chain of `(C ⊗ C)_n`.
pub fn switch_vec(c: &ChainComplex, n: i32, x: &[i64]) -> Vec<i64> {
    switch_matrix(c, n).mul_vec(x)
}

fn add_scaled(x: &mut [i64], y: &[i64], k: i64) {
    for (a, b) in x.iter_mut().zip(y) {
        *a += k * b;
    }
}

/// An `n`-dimensional symmetric structure truncated at `k`: chains
/// `φ_s ∈ (C ⊗ C)_{n+s}` for `0 ≤ s ≤ k` with
/// `dφ_s = (-1)^n (φ_{s-1} + (-1)^s T φ_{s-1})` and `dφ_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricStructure {
    complex: ChainComplex,
    dim: i32,
    phi: Vec<Vec<i64>>,
}

impl SymmetricStructure {
    /// Checks the cycle relations; `NOT_A_CYCLE` names the first failing `s`.
    pub fn new(complex: ChainComplex, dim: i32, phi: Vec<Vec<i64>>) -> Result<Self> {
        let s = Self::from_chains(complex, dim, phi)?;
        match s.defect() {
            None => Ok(s),
            Some(k) => Err(Error::new(ErrorKind::NotACycle, format!("symmetric relation fails at s = {k}"))),
        }
    }

    /// Wraps chains without checking the cycle relations (used for pieces over
    /// boundary balls, which are only relative cycles).
    pub fn from_chains(complex: ChainComplex, dim: i32, phi: Vec<Vec<i64>>) -> Result<Self> {
        if phi.is_empty() {
            return Err(Error::new(ErrorKind::ShapeMismatch, "at least φ_0 is required"));
        }
        let lay = TensorLayout::new(&complex, &complex);
        for (s, x) in phi.iter().enumerate() {
            if x.len() != lay.rank(dim + s as i32) {
                return Err(Error::new(ErrorKind::ShapeMismatch, format!("φ_{s} has length {} but (C ⊗ C)_{} has rank {}", x.len(), dim + s as i32, lay.rank(dim + s as i32))));
            }
        }
        Ok(SymmetricStructure { complex, dim, phi })
    }

    /// The zero structure.
    pub fn zero(complex: ChainComplex, dim: i32, k: usize) -> Self {
        let lay = TensorLayout::new(&complex, &complex);
        let phi = (0..=k).map(|s| vec![0; lay.rank(dim + s as i32)]).collect();
        SymmetricStructure { complex, dim, phi }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self, s: usize) -> &[i64] {
        &self.phi[s]
    }

    pub fn chains(&self) -> &[Vec<i64>] {
        &self.phi
    }

    /// `dφ_s - (-1)^n (φ_{s-1} + (-1)^s T φ_{s-1})`.
    pub fn residual(&self, s: usize) -> Vec<i64> {
        let c = &self.complex;
        let n = self.dim;
        let deg = n + s as i32;
        let mut r = tensor_boundary(c, c, deg, &self.phi[s]);
        if s > 0 {
            let prev = &self.phi[s - 1];
            add_scaled(&mut r, prev, -sign(n as i64));
            add_scaled(&mut r, &switch_vec(c, deg - 1, prev), -sign(n as i64) * sign(s as i64));
        }
        r
    }

    /// First `s` at which the cycle relation fails.
    pub fn defect(&self) -> Option<usize> {
        (0..self.phi.len()).find(|&s| self.residual(s).iter().any(|&x| x != 0))
    }

    pub fn is_cycle(&self) -> bool {
        self.defect().is_none()
    }

    /// `φ_0` as a degree-`n` map `TC -> C`, i.e. a chain map `Σ^n TC -> C`.
    pub fn slant(&self) -> ChainMap {
        slant(&self.complex, &self.complex, self.dim, &self.phi[0])
    }

    pub fn poincare(&self) -> PoincareVerdict {
        verdict_of(self.is_cycle(), || self.slant())
    }

    pub fn is_poincare(&self) -> bool {
        self.poincare().holds
    }

    /// Keeps `φ_0, ..., φ_k`.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.truncation() {
            return Err(Error::new(ErrorKind::TruncationTooSmall, format!("requested {k}, have {}", self.truncation())));
        }
        Ok(SymmetricStructure { complex: self.complex.clone(), dim: self.dim, phi: self.phi[..=k].to_vec() })
    }

    pub fn scale(&self, k: i64) -> Self {
        let phi = self.phi.iter().map(|x| x.iter().map(|v| k * v).collect()).collect();
        SymmetricStructure { complex: self.complex.clone(), dim: self.dim, phi }
    }

    /// Transport along a chain isomorphism `f : C -> C'`: `φ'_s = (f ⊗ f) φ_s`.
    pub fn transport(&self, f: &ChainMap) -> Self {
        assert_eq!(f.source, self.complex, "map must start at the structure's complex");
        let phi = self.phi.iter().enumerate().map(|(s, x)| tensor_square_vec(f, self.dim + s as i32, x)).collect();
        SymmetricStructure { complex: f.target.clone(), dim: self.dim, phi }
    }

    /// The algebraic boundary `(∂C, ∂φ)` with `∂C = Σ^{-1} cone(φ_0)`, an
    /// `(n-1)`-dimensional structure truncated one level lower.
    ///
    /// `∂C_r = C_{r+1} ⊕ TC_{r-n}`. With `c x` and `t x` the copies of a basis
    /// element `x` and of its dual, `∂φ_s` is `(-1)^{|a|+s+1} c a ⊗ c b` summed over
    /// the terms `a ⊗ b` of `φ_{s+1}`, plus for `s = 0` the pairing `P + TP` with
    /// `P = Σ_x (-1)^{|x|(|x|+1)/2} t x ⊗ c x`.
    pub fn boundary(&self) -> Result<(ChainComplex, SymmetricStructure)> {
        if !self.is_cycle() {
            return Err(Error::new(ErrorKind::NotACycle, "boundary of a non-cycle"));
        }
        let c = &self.complex;
        let n = self.dim;
        let f = self.slant().as_degree_zero();
        let bc = f.cone()?.suspend(-1, true);
        let lay_c = TensorLayout::new(c, c);
        if self.truncation() == 0 && lay_c.rank(n + 1) > 0 {
            return Err(Error::new(ErrorKind::TruncationTooSmall, "the boundary needs φ_1"));
        }
        let k = self.truncation().max(1) - 1;
        let lay_b = TensorLayout::new(&bc, &bc);
        // index in ∂C of c x (x ∈ C_p) and t x
        let cpart = |p: i32, i: usize| (p - 1, i);
        let tpart = |p: i32, i: usize| (n - p, c.rank(n - p + 1) + i);
        let mut out = Vec::with_capacity(k + 1);
        for s in 0..=k {
            let deg = n - 1 + s as i32;
            let mut x = vec![0i64; lay_b.rank(deg)];
            if let Some(next) = self.phi.get(s + 1) {
                for (idx, &v) in next.iter().enumerate() {
                    if v != 0 {
                        let (p, i, q, j) = lay_c.locate(n + s as i32 + 1, idx);
                        let (a, b) = (cpart(p, i), cpart(q, j));
                        x[lay_b.index(a.0, a.1, b.0, b.1)] += sign(p as i64 + s as i64 + 1) * v;
                    }
                }
            }
            if s == 0 {
                for p in c.degrees() {
                    let e = koszul_c(p as i64 + 1);
                    for i in 0..c.rank(p) {
                        let (t, u) = (tpart(p, i), cpart(p, i));
                        x[lay_b.index(t.0, t.1, u.0, u.1)] += e;
                        x[lay_b.index(u.0, u.1, t.0, t.1)] += e * sign(t.0 as i64 * u.0 as i64);
                    }
                }
            }
            out.push(x);
        }
        let s = SymmetricStructure::new(bc.clone(), n - 1, out).expect("boundary structure satisfies the cycle relations");
        Ok((bc, s))
    }
}

/// An `n`-dimensional quadratic structure: chains `ψ_s ∈ (C ⊗ C)_{n-s}` with
/// `dψ_s = (-1)^{s+1} (ψ_{s+1} + (-1)^{s+1} T ψ_{s+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticStructure {
    complex: ChainComplex,
    dim: i32,
    psi: Vec<Vec<i64>>,
}

impl QuadraticStructure {
    pub fn new(complex: ChainComplex, dim: i32, psi: Vec<Vec<i64>>) -> Result<Self> {
        let q = Self::from_chains(complex, dim, psi)?;
        match q.defect() {
            None => Ok(q),
            Some(k) => Err(Error::new(ErrorKind::NotACycle, format!("quadratic relation fails at s = {k}"))),
        }
    }

    pub fn from_chains(complex: ChainComplex, dim: i32, psi: Vec<Vec<i64>>) -> Result<Self> {
        if psi.is_empty() {
            return Err(Error::new(ErrorKind::ShapeMismatch, "at least ψ_0 is required"));
        }
        let lay = TensorLayout::new(&complex, &complex);
        for (s, x) in psi.iter().enumerate() {
            if x.len() != lay.rank(dim - s as i32) {
                return Err(Error::new(ErrorKind::ShapeMismatch, format!("ψ_{s} has the wrong length")));
            }
        }
        Ok(QuadraticStructure { complex, dim, psi })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn psi(&self, s: usize) -> &[i64] {
        &self.psi[s]
    }

    pub fn chains(&self) -> &[Vec<i64>] {
        &self.psi
    }

    /// `dψ_s - (-1)^{s+1} ψ_{s+1} - T ψ_{s+1}`.
    pub fn residual(&self, s: usize) -> Vec<i64> {
        let c = &self.complex;
        let deg = self.dim - s as i32;
        let mut r = tensor_boundary(c, c, deg, &self.psi[s]);
        if let Some(next) = self.psi.get(s + 1) {
            add_scaled(&mut r, next, -sign(s as i64 + 1));
            add_scaled(&mut r, &switch_vec(c, deg - 1, next), -1);
        }
        r
    }

    pub fn defect(&self) -> Option<usize> {
        (0..self.psi.len()).find(|&s| self.residual(s).iter().any(|&x| x != 0))
    }

    pub fn is_cycle(&self) -> bool {
        self.defect().is_none()
    }

    /// `φ_0 = (1 + T) ψ_0`, `φ_s = 0` for `s > 0`, truncated at `k`.
    pub fn symmetrize(&self, k: usize) -> SymmetricStructure {
        let c = &self.complex;
        let mut phi0 = self.psi[0].clone();
        add_scaled(&mut phi0, &switch_vec(c, self.dim, &self.psi[0]), 1);
        let mut s = SymmetricStructure::zero(c.clone(), self.dim, k);
        s.phi[0] = phi0;
        debug_assert!(!self.is_cycle() || s.is_cycle());
        s
    }

    pub fn poincare(&self) -> PoincareVerdict {
        let s = self.symmetrize(0);
        verdict_of(self.is_cycle(), || s.slant())
    }

    pub fn is_poincare(&self) -> bool {
        self.poincare().holds
    }

    pub fn transport(&self, f: &ChainMap) -> Self {
        assert_eq!(f.source, self.complex, "map must start at the structure's complex");
        let psi = self.psi.iter().enumerate().map(|(s, x)| tensor_square_vec(f, self.dim - s as i32, x)).collect();
        QuadraticStructure { complex: f.target.clone(), dim: self.dim, psi }
    }
}

/// The `0`-dimensional quadratic complex of a square matrix: `C = Z^k` in degree 0
/// and `ψ_0 = Σ Q_{ij} e_i ⊗ e_j`.
pub fn quadratic_from_form(q: &Matrix) -> Result<QuadraticStructure> {
    if q.rows() != q.cols() {
        return Err(Error::new(ErrorKind::ShapeMismatch, "form must be square"));
    }
    let k = q.rows();
    let c = ChainComplex::concentrated(0, k);
    let lay = TensorLayout::new(&c, &c);
    let mut psi0 = vec![0i64; lay.rank(0)];
    for (i, j, v) in q.triplets() {
        psi0[lay.index(0, i, 0, j)] = v;
    }
    QuadraticStructure::new(c, 0, vec![psi0])
}

/// The `0`-dimensional symmetric complex of a symmetric matrix.
pub fn symmetric_from_form(m: &Matrix) -> Result<SymmetricStructure> {
    if m.rows() != m.cols() || m.transpose() != *m {
        return Err(Error::new(ErrorKind::ShapeMismatch, "form must be square and symmetric"));
    }
    let c = ChainComplex::concentrated(0, m.rows());
    let lay = TensorLayout::new(&c, &c);
    let mut phi0 = vec![0i64; lay.rank(0)];
    for (i, j, v) in m.triplets() {
        phi0[lay.index(0, i, 0, j)] = v;
    }
    SymmetricStructure::new(c, 0, vec![phi0])
}

/// The matrix of a `0`-dimensional structure on a complex concentrated in degree 0.
pub fn form_matrix(s: &SymmetricStructure) -> Result<Matrix> {
    let c = s.complex();
    if s.dim() != 0 || c.degrees().any(|n| n != 0 && c.rank(n) != 0) {
        return Err(Error::new(ErrorKind::ShapeMismatch, "not a form: need dimension 0 and a complex in degree 0"));
    }
    Ok(s.slant().component(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        let d1 = Matrix::from_rows(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        ChainComplex::new(0, vec![3, 3], vec![Matrix::zeros(0, 3), d1]).unwrap()
    }

    #[test]
    fn point_structure() {
        let s = symmetric_from_form(&Matrix::identity(1)).unwrap();
        assert!(s.is_poincare());
        assert_eq!(s.slant().component(0), Matrix::identity(1));
    }

    #[test]
    fn form_verdicts() {
        let one = quadratic_from_form(&Matrix::identity(1)).unwrap();
        assert_eq!(form_matrix(&one.symmetrize(0)).unwrap(), Matrix::from_rows(&[vec![2]]));
        assert!(!one.is_poincare());
        let hyp = quadratic_from_form(&Matrix::from_rows(&[vec![0, 1], vec![0, 0]])).unwrap();
        assert!(hyp.is_poincare());
        let zero = quadratic_from_form(&Matrix::zeros(2, 2)).unwrap();
        assert!(zero.symmetrize(0).phi(0).iter().all(|&x| x == 0));
    }

    #[test]
    fn symmetrize_is_q_plus_transpose() {
        let q = Matrix::from_rows(&[vec![1, 4, -2], vec![0, 3, 1], vec![5, 0, 0]]);
        let s = quadratic_from_form(&q).unwrap().symmetrize(2);
        assert!(s.is_cycle());
        assert_eq!(form_matrix(&s).unwrap(), q.add(&q.transpose()));
    }

    #[test]
    fn non_cycle_rejected() {
        let c = circle();
        let lay = TensorLayout::new(&c, &c);
        let mut phi0 = vec![0; lay.rank(1)];
        phi0[lay.index(0, 0, 1, 0)] = 1;
        let e = SymmetricStructure::new(c, 1, vec![phi0]).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotACycle);
    }

    #[test]
    fn boundary_of_forms() {
        let two = symmetric_from_form(&Matrix::from_rows(&[vec![2]])).unwrap();
        let (bc, bs) = two.boundary().unwrap();
        assert_eq!(bc.homology().describe(), "H-1=Z/2");
        assert!(bs.is_cycle());
        assert!(bs.is_poincare());
        let m = Matrix::from_rows(&[vec![2, 1], vec![1, 3]]);
        let (bc, bs) = symmetric_from_form(&m).unwrap().boundary().unwrap();
        assert_eq!(bc.homology().describe(), "H-1=Z/5");
        assert!(bs.is_poincare());
        let (bc, _) = symmetric_from_form(&Matrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap().boundary().unwrap();
        assert!(bc.is_acyclic());
    }

    #[test]
    fn transport_along_identity() {
        let s = symmetric_from_form(&Matrix::from_rows(&[vec![2, 1], vec![1, 3]])).unwrap();
        assert_eq!(s.transport(&ChainMap::identity(s.complex())), s);
    }
}

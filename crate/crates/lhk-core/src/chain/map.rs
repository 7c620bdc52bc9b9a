//! Chain maps of arbitrary degree, mapping cones and equivalence certificates.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::{ChainComplex, HomologyProfile};
use super::matrix::{sign, Matrix};
use crate::error::{Error, ErrorKind, Result};

/// A map `f_n : C_n -> D_{n+s}` of degree `s`.
///
/// It is a chain map when `d f = (-1)^s f d`, which is the cycle condition in the
/// Hom complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub shift: i32,
    maps: BTreeMap<i32, Matrix>,
}

/// Outcome of [`ChainMap::equivalence`]: the verdict and the homology of the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub holds: bool,
    pub cone_homology: HomologyProfile,
}

impl ChainMap {
    /// Builds a map from its components, keyed by source degree. Missing degrees are
    /// zero. Component shapes are asserted; the chain-map property is not.
    pub fn from_components(source: ChainComplex, target: ChainComplex, shift: i32, comps: BTreeMap<i32, Matrix>) -> Self {
        let mut maps = BTreeMap::new();
        for (n, m) in comps {
            assert_eq!(m.shape(), (target.rank(n + shift), source.rank(n)), "component {n} has wrong shape");
            if !m.is_zero() {
                maps.insert(n, m);
            }
        }
        ChainMap { source, target, shift, maps }
    }

    /// Like [`ChainMap::from_components`] but rejects maps that are not chain maps.
    pub fn new(source: ChainComplex, target: ChainComplex, shift: i32, comps: BTreeMap<i32, Matrix>) -> Result<Self> {
        let f = Self::from_components(source, target, shift, comps);
        if let Some(n) = f.chain_map_defect() {
            return Err(Error::new(ErrorKind::DegreeShiftMismatch, format!("not a degree-{shift} chain map at source degree {n}")));
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let comps = c.degrees().map(|n| (n, Matrix::identity(c.rank(n)))).collect();
        Self::from_components(c.clone(), c.clone(), 0, comps)
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex, shift: i32) -> Self {
        Self::from_components(source.clone(), target.clone(), shift, BTreeMap::new())
    }

    /// `f_n : C_n -> D_{n+s}`, zero where not stored.
    pub fn component(&self, n: i32) -> Matrix {
        self.maps.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(self.target.rank(n + self.shift), self.source.rank(n)))
    }

    pub fn components(&self) -> &BTreeMap<i32, Matrix> {
        &self.maps
    }

    /// First source degree where `d f = (-1)^s f d` fails.
    pub fn chain_map_defect(&self) -> Option<i32> {
        let s = self.shift;
        let lo = self.source.lo().min(self.target.lo() - s) - 1;
        let hi = self.source.hi().max(self.target.hi() - s) + 1;
        (lo..=hi).find(|&n| {
            let left = self.target.d(n + s).mul(&self.component(n));
            let right = self.component(n - 1).mul(&self.source.d(n)).scale(sign(s as i64));
            left != right
        })
    }

    pub fn is_chain_map(&self) -> bool {
        self.chain_map_defect().is_none()
    }

    /// `self ∘ other`, with degrees adding. No signs are introduced.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(other.target, self.source, "composition of incompatible maps");
        let comps = other.source.degrees().map(|n| (n, self.component(n + other.shift).mul(&other.component(n)))).collect();
        Self::from_components(other.source.clone(), self.target.clone(), self.shift + other.shift, comps)
    }

    pub fn add_scaled(&self, other: &ChainMap, k: i64) -> ChainMap {
        assert_eq!(self.shift, other.shift, "degree mismatch");
        let degrees: Vec<i32> = self.maps.keys().chain(other.maps.keys()).copied().collect();
        let comps = degrees.into_iter().map(|n| (n, self.component(n).add_scaled(&other.component(n), k))).collect();
        Self::from_components(self.source.clone(), self.target.clone(), self.shift, comps)
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add_scaled(other, -1)
    }

    pub fn scale(&self, k: i64) -> ChainMap {
        let comps = self.maps.iter().map(|(&n, m)| (n, m.scale(k))).collect();
        Self::from_components(self.source.clone(), self.target.clone(), self.shift, comps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    /// The transpose `T f : TD -> TC`, of the same degree, with no sign.
    pub fn dual(&self) -> ChainMap {
        let s = self.shift;
        let comps = self.maps.iter().map(|(&k, m)| (-k - s, m.transpose())).collect();
        Self::from_components(self.target.dual(), self.source.dual(), s, comps)
    }

    /// Regards a degree-`s` chain map `C -> D` as a degree-0 chain map `Σ^s C -> D`.
    pub fn as_degree_zero(&self) -> ChainMap {
        let s = self.shift;
        let src = self.source.suspend(s, true);
        let comps = self.maps.iter().map(|(&n, m)| (n + s, m.clone())).collect();
        Self::from_components(src, self.target.clone(), 0, comps)
    }

    /// Mapping cone `D_n ⊕ C_{n-1}` with `d(y, x) = (dy + f x, -dx)`.
    pub fn cone(&self) -> Result<ChainComplex> {
        if self.shift != 0 {
            return Err(Error::new(ErrorKind::DegreeShiftMismatch, format!("cone of a degree-{} map", self.shift)));
        }
        if let Some(n) = self.chain_map_defect() {
            return Err(Error::new(ErrorKind::DegreeShiftMismatch, format!("cone of a non-chain map (source degree {n})")));
        }
        Ok(self.cone_unchecked())
    }

    fn cone_unchecked(&self) -> ChainComplex {
        let (c, d) = (&self.source, &self.target);
        let lo = d.lo().min(c.lo() + 1);
        let hi = d.hi().max(c.hi() + 1);
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in lo..=hi {
            ranks.insert(n, d.rank(n) + c.rank(n - 1));
            let f = self.component(n - 1);
            let dc = c.d(n - 1).neg();
            let m = Matrix::block(&[d.rank(n - 1), c.rank(n - 2)], &[d.rank(n), c.rank(n - 1)], &[(0, 0, &d.d(n)), (0, 1, &f), (1, 1, &dc)]);
            diffs.insert(n, m);
        }
        ChainComplex::new_unchecked_map(&ranks, &diffs)
    }

    /// Decides whether the map is a chain equivalence by computing the homology of
    /// its cone (after regarding a degree-`s` map as a map out of `Σ^s C`).
    pub fn equivalence(&self) -> Result<EquivalenceVerdict> {
        let cone = self.as_degree_zero().cone()?;
        let h = cone.homology();
        Ok(EquivalenceVerdict { holds: h.is_zero(), cone_homology: h })
    }

    pub fn is_chain_equivalence(&self) -> bool {
        self.equivalence().map(|v| v.holds).unwrap_or(false)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.shift == 0
            && self.is_chain_map()
            && self.source.degrees().chain(self.target.degrees()).all(|n| {
                let m = self.component(n);
                m.rows() == m.cols() && super::elim::invariant_factors(&m).iter().filter(|&&x| x == 1).count() == m.rows()
            })
    }
}

/// Searches for a chain isomorphism `a -> b` sending basis element `i` of `a_n` to
/// `±` basis element `perm[n][i]` of `b_n`, choosing the signs by propagation along
/// the nonzero entries of the differentials.
pub fn solve_signed_bijection(a: &ChainComplex, b: &ChainComplex, perm: &BTreeMap<i32, Vec<usize>>) -> Option<ChainMap> {
    let degrees: Vec<i32> = a.degrees().collect();
    if a.is_zero() {
        return b.is_zero().then(|| ChainMap::zero(a, b, 0));
    }
    let mut offset = BTreeMap::new();
    let mut total = 0usize;
    for &n in &degrees {
        if a.rank(n) != b.rank(n) || perm.get(&n).map_or(0, Vec::len) != a.rank(n) {
            return None;
        }
        offset.insert(n, total);
        total += a.rank(n);
    }
    if a.degrees().chain(b.degrees()).any(|n| a.rank(n) != b.rank(n)) {
        return None;
    }
    // Constraint graph: eps_u * eps_v = w on edges.
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); total];
    for &n in &degrees {
        let Some(da) = a.d_ref(n) else { continue };
        let db = b.d(n);
        if da.nnz() != db.nnz() {
            return None;
        }
        let (pn, pl) = (&perm[&n], &perm[&(n - 1)]);
        for (i, j, x) in da.triplets() {
            let y = db.get(pl[i], pn[j]);
            let w = if y == x {
                1
            } else if y == -x {
                -1
            } else {
                return None;
            };
            let (u, v) = (offset[&(n - 1)] + i, offset[&n] + j);
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
    }
    let mut eps = vec![0i64; total];
    for start in 0..total {
        if eps[start] != 0 {
            continue;
        }
        eps[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(v, w) in &adj[u] {
                let want = eps[u] * w;
                if eps[v] == 0 {
                    eps[v] = want;
                    queue.push_back(v);
                } else if eps[v] != want {
                    return None;
                }
            }
        }
    }
    let comps = degrees
        .iter()
        .map(|&n| {
            let o = offset[&n];
            let m = Matrix::from_triplets(a.rank(n), a.rank(n), perm[&n].iter().enumerate().map(|(i, &pi)| (pi, i, eps[o + i])));
            (n, m)
        })
        .collect();
    let f = ChainMap::from_components(a.clone(), b.clone(), 0, comps);
    f.is_chain_map().then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i32) -> ChainComplex {
        ChainComplex::concentrated(n, 1)
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = ChainComplex::new(0, vec![2, 2], vec![Matrix::zeros(0, 2), Matrix::from_rows(&[vec![1, 1], vec![-1, -1]])]).unwrap();
        let v = ChainMap::identity(&c).equivalence().unwrap();
        assert!(v.holds);
        assert!(!c.homology().is_zero());
    }

    #[test]
    fn times_two_is_not_an_equivalence() {
        let f = ChainMap::new(z(0), z(0), 0, BTreeMap::from([(0, Matrix::from_rows(&[vec![2]]))])).unwrap();
        let v = f.equivalence().unwrap();
        assert!(!v.holds);
        assert_eq!(v.cone_homology.get(0).torsion, vec![2]);
    }

    #[test]
    fn cone_of_zero_map_is_suspension() {
        let c = z(1);
        let f = ChainMap::zero(&c, &ChainComplex::zero(), 0);
        let k = f.cone().unwrap();
        assert_eq!((k.lo(), k.hi(), k.rank(2)), (2, 2, 1));
    }

    #[test]
    fn non_chain_map_rejected_by_cone() {
        let c = ChainComplex::new(0, vec![1, 1], vec![Matrix::zeros(0, 1), Matrix::from_rows(&[vec![1]])]).unwrap();
        let f = ChainMap::from_components(c.clone(), c.clone(), 0, BTreeMap::from([(0, Matrix::identity(1))]));
        assert_eq!(f.cone().unwrap_err().kind, ErrorKind::DegreeShiftMismatch);
    }

    #[test]
    fn dual_of_chain_map_is_chain_map() {
        let c = ChainComplex::new(0, vec![2, 1], vec![Matrix::zeros(0, 2), Matrix::from_rows(&[vec![1], vec![-1]])]).unwrap();
        let d = ChainComplex::new(0, vec![1, 1], vec![Matrix::zeros(0, 1), Matrix::from_rows(&[vec![2]])]).unwrap();
        let f = ChainMap::new(c.clone(), d.clone(), 0, BTreeMap::from([(0, Matrix::from_rows(&[vec![2, 0]])), (1, Matrix::from_rows(&[vec![1]]))])).unwrap();
        assert!(f.dual().is_chain_map());
        assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn signed_bijection_found() {
        let a = ChainComplex::new(0, vec![2, 1], vec![Matrix::zeros(0, 2), Matrix::from_rows(&[vec![1], vec![-1]])]).unwrap();
        let b = ChainComplex::new(0, vec![2, 1], vec![Matrix::zeros(0, 2), Matrix::from_rows(&[vec![1], vec![1]])]).unwrap();
        let perm = BTreeMap::from([(0, vec![1, 0]), (1, vec![0])]);
        let f = solve_signed_bijection(&a, &b, &perm).unwrap();
        assert!(f.is_isomorphism());
    }
}

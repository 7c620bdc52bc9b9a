//! Bounded chain complexes of finitely generated free abelian groups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::elim::invariant_factors;
use super::matrix::{sign, Matrix};
use crate::error::{Error, ErrorKind, Result};

/// Free rank and torsion coefficients of one homology group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyGroup {
    pub free: usize,
    /// Orders greater than one, each dividing the next.
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn z(free: usize) -> Self {
        HomologyGroup { free, torsion: Vec::new() }
    }
}

/// Homology of a complex, keyed by degree; degrees with zero homology are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    pub groups: BTreeMap<i32, HomologyGroup>,
}

impl HomologyProfile {
    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn get(&self, n: i32) -> HomologyGroup {
        self.groups.get(&n).cloned().unwrap_or_default()
    }

    pub fn betti(&self, n: i32) -> usize {
        self.groups.get(&n).map_or(0, |g| g.free)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|(&n, g)| sign(n as i64) * g.free as i64).sum()
    }

    /// Compact text form such as `H0=Z H1=Z^2+Z/2`.
    pub fn describe(&self) -> String {
        if self.groups.is_empty() {
            return String::from("0");
        }
        let mut parts = Vec::new();
        for (n, g) in &self.groups {
            let mut s = Vec::new();
            if g.free == 1 {
                s.push(String::from("Z"));
            } else if g.free > 1 {
                s.push(format!("Z^{}", g.free));
            }
            for t in &g.torsion {
                s.push(format!("Z/{t}"));
            }
            parts.push(format!("H{}={}", n, s.join("+")));
        }
        parts.join(" ")
    }
}

/// A bounded chain complex `C_lo, ..., C_hi` with `d_n : C_n -> C_{n-1}`.
///
/// `d_n` is stored as a `rank(n-1) × rank(n)` matrix; degrees outside the stored
/// range have rank zero. Basis labels are optional and carried through operations
/// where they have an obvious meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lo: i32,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
    labels: Option<Vec<Vec<String>>>,
}

impl ChainComplex {
    /// Builds a complex from its lowest degree, ranks and differentials, checking
    /// shapes and `d ∘ d = 0`.
    pub fn new(lo: i32, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let c = Self::new_unchecked(lo, ranks, diffs);
        c.check()?;
        Ok(c)
    }

    /// Builds a complex without checking `d ∘ d = 0`; shapes are still asserted.
    pub fn new_unchecked(lo: i32, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Self {
        assert_eq!(ranks.len(), diffs.len(), "one differential per degree");
        for (i, d) in diffs.iter().enumerate() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            assert_eq!(d.shape(), (below, ranks[i]), "d_{} has wrong shape", lo + i as i32);
        }
        ChainComplex { lo, ranks, diffs, labels: None }.trimmed()
    }

    pub fn zero() -> Self {
        ChainComplex { lo: 0, ranks: Vec::new(), diffs: Vec::new(), labels: None }
    }

    /// `Z^rank` concentrated in degree `n`.
    pub fn concentrated(n: i32, rank: usize) -> Self {
        if rank == 0 {
            return Self::zero();
        }
        ChainComplex { lo: n, ranks: vec![rank], diffs: vec![Matrix::zeros(0, rank)], labels: None }
    }

    /// Builds a complex from a degree-keyed map of differentials `d_n`.
    pub fn from_map(ranks: &BTreeMap<i32, usize>, diffs: &BTreeMap<i32, Matrix>) -> Result<Self> {
        let Some((&lo, _)) = ranks.iter().find(|(_, &r)| r > 0) else {
            return Ok(Self::zero());
        };
        let hi = *ranks.iter().rev().find(|(_, &r)| r > 0).unwrap().0;
        let mut rk = Vec::new();
        let mut ds = Vec::new();
        for n in lo..=hi {
            let r = ranks.get(&n).copied().unwrap_or(0);
            let below = if n == lo { 0 } else { ranks.get(&(n - 1)).copied().unwrap_or(0) };
            let d = match diffs.get(&n) {
                Some(m) if n > lo => m.clone(),
                _ => Matrix::zeros(below, r),
            };
            rk.push(r);
            ds.push(d);
        }
        Self::new(lo, rk, ds)
    }

    fn trimmed(mut self) -> Self {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
            if let Some(l) = &mut self.labels {
                l.pop();
            }
        }
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            self.diffs.remove(0);
            if let Some(l) = &mut self.labels {
                l.remove(0);
            }
            self.lo += 1;
            if let Some(d) = self.diffs.first_mut() {
                *d = Matrix::zeros(0, d.cols());
            }
        }
        if self.ranks.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        assert_eq!(labels.len(), self.ranks.len(), "one label list per degree");
        for (l, &r) in labels.iter().zip(&self.ranks) {
            assert_eq!(l.len(), r, "one label per basis element");
        }
        self.labels = Some(labels);
        self
    }

    /// Attaches labels given as a degree-keyed map; missing degrees are left blank.
    pub fn with_label_map(self, labels: &BTreeMap<i32, Vec<String>>) -> Self {
        if self.is_zero() {
            return self;
        }
        let l = self.degrees().map(|n| labels.get(&n).cloned().unwrap_or_else(|| vec![String::new(); self.rank(n)])).collect();
        self.with_labels(l)
    }

    pub fn labels(&self, n: i32) -> Option<&[String]> {
        let l = self.labels.as_ref()?;
        self.index(n).map(|i| l[i].as_slice())
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn drop_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    fn index(&self, n: i32) -> Option<usize> {
        let i = n - self.lo;
        (i >= 0 && (i as usize) < self.ranks.len()).then_some(i as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest degree with nonzero rank (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree with nonzero rank (-1 for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.ranks.len() as i32 - 1
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    pub fn rank(&self, n: i32) -> usize {
        self.index(n).map_or(0, |i| self.ranks[i])
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_n : C_n -> C_{n-1}` as a `rank(n-1) × rank(n)` matrix.
    pub fn d(&self, n: i32) -> Matrix {
        match self.index(n) {
            Some(i) if i > 0 => self.diffs[i].clone(),
            _ => Matrix::zeros(self.rank(n - 1), self.rank(n)),
        }
    }

    /// Borrowed `d_n`, or `None` when it is a zero matrix by range.
    pub fn d_ref(&self, n: i32) -> Option<&Matrix> {
        match self.index(n) {
            Some(i) if i > 0 => Some(&self.diffs[i]),
            _ => None,
        }
    }

    pub fn check(&self) -> Result<()> {
        for n in self.degrees() {
            if let (Some(a), Some(b)) = (self.d_ref(n - 1), self.d_ref(n)) {
                if !a.mul(b).is_zero() {
                    return Err(Error::new(ErrorKind::NotDSquaredZero, format!("d_{} d_{} != 0", n - 1, n)));
                }
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| sign(n as i64) * self.rank(n) as i64).sum()
    }

    pub fn homology(&self) -> HomologyProfile {
        let mut facs: BTreeMap<i32, Vec<i64>> = BTreeMap::new();
        for n in self.degrees() {
            if let Some(d) = self.d_ref(n) {
                facs.insert(n, invariant_factors(d));
            }
        }
        let mut groups = BTreeMap::new();
        for n in self.degrees() {
            let rk_out = facs.get(&n).map_or(0, Vec::len);
            let inc = facs.get(&(n + 1));
            let rk_in = inc.map_or(0, Vec::len);
            let free = self.rank(n) - rk_out - rk_in;
            let torsion: Vec<i64> = inc.map(|v| v.iter().copied().filter(|&x| x > 1).collect()).unwrap_or_default();
            let g = HomologyGroup { free, torsion };
            if !g.is_zero() {
                groups.insert(n, g);
            }
        }
        HomologyProfile { groups }
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_zero()
    }

    /// `Σ^k C` (signed: `d ↦ (-1)^k d`) or `S^k C` (unsigned).
    pub fn suspend(&self, k: i32, signed: bool) -> ChainComplex {
        if self.is_zero() {
            return self.clone();
        }
        let s = if signed { sign(k as i64) } else { 1 };
        let diffs = self.diffs.iter().map(|d| d.scale(s)).collect();
        ChainComplex { lo: self.lo + k, ranks: self.ranks.clone(), diffs, labels: self.labels.clone() }
    }

    /// The dual `T C = Hom(C, Z)` with `(TC)_n = (C_{-n})^*` and differential
    /// `d_{TC, n} = (d_{C, 1-n})^T`.
    pub fn dual(&self) -> ChainComplex {
        if self.is_zero() {
            return self.clone();
        }
        let lo = -self.hi();
        let hi = -self.lo;
        let ranks: Vec<usize> = (lo..=hi).map(|n| self.rank(-n)).collect();
        let diffs = (lo..=hi).map(|n| if n == lo { Matrix::zeros(0, self.rank(-n)) } else { self.d(1 - n).transpose() }).collect();
        let labels = self.labels.as_ref().map(|_| (lo..=hi).map(|n| self.labels(-n).unwrap().iter().map(|s| format!("{s}*")).collect()).collect());
        ChainComplex { lo, ranks, diffs, labels }
    }

    /// Direct sum `C ⊕ D`, with `C`'s basis first in every degree.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in lo..=hi {
            ranks.insert(n, self.rank(n) + other.rank(n));
            let d = Matrix::block(&[self.rank(n - 1), other.rank(n - 1)], &[self.rank(n), other.rank(n)], &[(0, 0, &self.d(n)), (1, 1, &other.d(n))]);
            diffs.insert(n, d);
        }
        Self::from_map(&ranks, &diffs).expect("direct sum of complexes")
    }

    /// Subquotient on a set of basis indices per degree: keeps the listed basis
    /// elements and their differential entries. This is a subcomplex when the kept
    /// set is closed under `d`, and a quotient when its complement is.
    pub fn restrict_basis(&self, keep: &BTreeMap<i32, Vec<usize>>) -> ChainComplex {
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        let empty = Vec::new();
        for n in self.degrees() {
            let k = keep.get(&n).unwrap_or(&empty);
            ranks.insert(n, k.len());
            let kb = keep.get(&(n - 1)).unwrap_or(&empty);
            diffs.insert(n, self.d(n).select(kb, k));
        }
        let mut out = Self::new_unchecked_map(&ranks, &diffs);
        if let Some(_) = &self.labels {
            let lab: BTreeMap<i32, Vec<String>> = self.degrees().map(|n| (n, keep.get(&n).unwrap_or(&empty).iter().map(|&i| self.labels(n).unwrap()[i].clone()).collect())).collect();
            out = out.with_label_map(&lab);
        }
        out
    }

    pub(crate) fn new_unchecked_map(ranks: &BTreeMap<i32, usize>, diffs: &BTreeMap<i32, Matrix>) -> Self {
        let Some((&lo, _)) = ranks.iter().find(|(_, &r)| r > 0) else {
            return Self::zero();
        };
        let hi = *ranks.iter().rev().find(|(_, &r)| r > 0).unwrap().0;
        let mut rk = Vec::new();
        let mut ds = Vec::new();
        for n in lo..=hi {
            let r = ranks.get(&n).copied().unwrap_or(0);
            let below = if n == lo { 0 } else { ranks.get(&(n - 1)).copied().unwrap_or(0) };
            let d = match diffs.get(&n) {
                Some(m) if n > lo => m.clone(),
                _ => Matrix::zeros(below, r),
            };
            rk.push(r);
            ds.push(d);
        }
        Self::new_unchecked(lo, rk, ds)
    }

    /// Applies a basis change: `g_n` invertible over `Z` in every degree, giving
    /// the complex with differential `g_{n-1} d_n g_n^{-1}`.
    pub fn conjugate(&self, g: &BTreeMap<i32, Matrix>, g_inv: &BTreeMap<i32, Matrix>) -> ChainComplex {
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in self.degrees() {
            ranks.insert(n, self.rank(n));
            let gl = g.get(&(n - 1)).cloned().unwrap_or_else(|| Matrix::identity(self.rank(n - 1)));
            let gi = g_inv.get(&n).cloned().unwrap_or_else(|| Matrix::identity(self.rank(n)));
            diffs.insert(n, gl.mul(&self.d(n)).mul(&gi));
        }
        Self::from_map(&ranks, &diffs).expect("conjugate of a complex is a complex")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        // vertices a,b,c; edges ab, bc, ca
        let d1 = Matrix::from_rows(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        ChainComplex::new(0, vec![3, 3], vec![Matrix::zeros(0, 3), d1]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let h = circle().homology();
        assert_eq!(h.get(0), HomologyGroup::z(1));
        assert_eq!(h.get(1), HomologyGroup::z(1));
        assert_eq!(h.euler_characteristic(), 0);
    }

    #[test]
    fn torsion_detected() {
        let c = ChainComplex::new(0, vec![1, 1], vec![Matrix::zeros(0, 1), Matrix::from_rows(&[vec![2]])]).unwrap();
        let h = c.homology();
        assert_eq!(h.get(0), HomologyGroup { free: 0, torsion: vec![2] });
        assert_eq!(h.get(1), HomologyGroup::default());
        assert_eq!(h.describe(), "H0=Z/2");
    }

    #[test]
    fn d_squared_nonzero_rejected() {
        let d1 = Matrix::from_rows(&[vec![1]]);
        let d2 = Matrix::from_rows(&[vec![1]]);
        let e = ChainComplex::new(0, vec![1, 1, 1], vec![Matrix::zeros(0, 1), d1, d2]).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotDSquaredZero);
    }

    #[test]
    fn dual_of_circle_is_cochains() {
        let c = circle();
        let t = c.dual();
        assert_eq!((t.lo(), t.hi()), (-1, 0));
        assert_eq!(t.d(0), c.d(1).transpose());
        assert_eq!(t.dual(), c);
        let h = t.homology();
        assert_eq!(h.betti(0), 1);
        assert_eq!(h.betti(-1), 1);
    }

    #[test]
    fn suspension_of_point() {
        let p = ChainComplex::concentrated(0, 1).suspend(3, true);
        assert_eq!((p.lo(), p.hi(), p.rank(3)), (3, 3, 1));
        let s = circle().suspend(1, true);
        assert_eq!(s.d(2), circle().d(1).neg());
        assert_eq!(circle().suspend(1, false).d(2), circle().d(1));
    }

    #[test]
    fn trimming_keeps_zero_ends_out() {
        let c = ChainComplex::new(0, vec![0, 2, 0], vec![Matrix::zeros(0, 0), Matrix::zeros(0, 2), Matrix::zeros(2, 0)]).unwrap();
        assert_eq!((c.lo(), c.hi()), (1, 1));
        assert!(ChainComplex::new(0, vec![0], vec![Matrix::zeros(0, 0)]).unwrap().is_zero());
    }
}

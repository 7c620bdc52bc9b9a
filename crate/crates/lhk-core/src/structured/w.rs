//! The standard free `Z[Z/2]`-resolution `W` of `Z` and its diagonal.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::chain::{sign, tensor, ChainComplex, ChainMap, Matrix, TensorLayout};

/// `W` truncated at degree `k`: one generator `e_s` per degree with
/// `d e_s = (1 + (-1)^s T) e_{s-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WTruncation {
    pub k: usize,
}

/// `W_0 ← W_1 ← ... ← W_k`; the differentials alternate `1 - T`, `1 + T`.
pub fn w_resolution(k: usize) -> WTruncation {
    WTruncation { k }
}

impl WTruncation {
    /// The underlying integer complex: `W_s = Z^2` with basis `(e_s, T e_s)`.
    pub fn expanded(&self) -> ChainComplex {
        let mut diffs = vec![Matrix::zeros(0, 2)];
        for s in 1..=self.k {
            let t = sign(s as i64);
            diffs.push(Matrix::from_rows(&[vec![1, t], vec![t, 1]]));
        }
        ChainComplex::new(0, vec![2; self.k + 1], diffs).expect("d^2 = 0 in W")
    }

    /// The generator `T` acting on `W_s`.
    pub fn action(&self) -> Matrix {
        Matrix::from_rows(&[vec![0, 1], vec![1, 0]])
    }

    /// `ε : W_0 -> Z`, both generators to 1.
    pub fn augmentation(&self) -> Matrix {
        Matrix::from_rows(&[vec![1, 1]])
    }
}

/// An equivariant diagonal `Δ : W -> W ⊗ W`. Term `(i, a, j, b, c)` in degree `s`
/// means `e_s ↦ c · T^a e_i ⊗ T^b e_j`; the image of `T e_s` follows by applying
/// `T ⊗ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WDiagonal {
    pub k: usize,
    pub terms: Vec<Vec<(usize, usize, usize, usize, i64)>>,
}

/// `Δ(e_s) = Σ_{i+j=s} (-1)^{ij} e_i ⊗ T^i e_j`.
pub fn w_diagonal(k: usize) -> WDiagonal {
    let terms = (0..=k).map(|s| (0..=s).map(|i| (i, 0, s - i, i % 2, sign((i * (s - i)) as i64))).collect()).collect();
    WDiagonal { k, terms }
}

impl WDiagonal {
    /// `Δ` as a chain map of the expanded complexes.
    pub fn as_chain_map(&self) -> ChainMap {
        let w = w_resolution(self.k).expanded();
        let ww = tensor(&w, &w);
        let lay = TensorLayout::new(&w, &w);
        let mut comps = BTreeMap::new();
        for (s, terms) in self.terms.iter().enumerate() {
            let mut trip = Vec::new();
            for a0 in 0..2 {
                for &(i, a, j, b, c) in terms {
                    trip.push((lay.index(i as i32, (a + a0) % 2, j as i32, (b + a0) % 2), a0, c));
                }
            }
            comps.insert(s as i32, Matrix::from_triplets(ww.rank(s as i32), 2, trip));
        }
        ChainMap::from_components(w, ww, 0, comps)
    }

    pub fn is_chain_map(&self) -> bool {
        self.as_chain_map().is_chain_map()
    }

    /// `Δ ∘ T = (T ⊗ T) ∘ Δ` in every degree.
    pub fn is_equivariant(&self) -> bool {
        let f = self.as_chain_map();
        let w = &f.source;
        let lay = TensorLayout::new(w, w);
        let t = w_resolution(self.k).action();
        (0..=self.k as i32).all(|s| {
            let n = f.target.rank(s);
            let tt = Matrix::from_triplets(n, n, (0..n).map(|x| {
                let (p, i, q, j) = lay.locate(s, x);
                (lay.index(p, 1 - i, q, 1 - j), x, 1)
            }));
            f.component(s).mul(&t) == tt.mul(&f.component(s))
        })
    }

    /// `(ε ⊗ ε) Δ = ε` on `W_0`.
    pub fn is_augmented(&self) -> bool {
        let f = self.as_chain_map();
        let eps = w_resolution(self.k).augmentation();
        let lay = TensorLayout::new(&f.source, &f.source);
        let ee = Matrix::from_triplets(1, 4, (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| (0, lay.index(0, i, 0, j), 1)));
        ee.mul(&f.component(0)) == eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_shape() {
        let w = w_resolution(0).expanded();
        assert_eq!((w.lo(), w.hi(), w.rank(0)), (0, 0, 2));
        let w = w_resolution(5).expanded();
        assert!(w.check().is_ok());
        assert!((0..=5).all(|s| w.rank(s) == 2));
        assert_eq!(w.d(1), Matrix::from_rows(&[vec![1, -1], vec![-1, 1]]));
        assert_eq!(w.d(2), Matrix::from_rows(&[vec![1, 1], vec![1, 1]]));
        assert!(w.d(1).mul(&w.d(2)).is_zero());
        assert_eq!(w.homology().describe(), "H0=Z H5=Z");
    }

    #[test]
    fn diagonal_degree_zero() {
        let d = w_diagonal(0);
        assert_eq!(d.terms[0], vec![(0, 0, 0, 0, 1)]);
        assert!(d.is_augmented());
    }

    #[test]
    fn diagonal_is_equivariant_chain_map() {
        for k in 0..=6 {
            let d = w_diagonal(k);
            assert!(d.is_chain_map(), "k = {k}");
            assert!(d.is_equivariant(), "k = {k}");
            assert!(d.is_augmented());
        }
    }

    #[test]
    fn wrong_sign_breaks_chain_map() {
        let mut d = w_diagonal(3);
        d.terms[2][1].4 *= -1;
        assert!(!d.is_chain_map());
    }
}

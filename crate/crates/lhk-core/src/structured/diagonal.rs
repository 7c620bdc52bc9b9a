//! Higher diagonals `Δ_s : C(S) -> (C(S) ⊗ C(S))_{*+s}` on ordered simplicial
//! complexes and the symmetric construction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::structure::SymmetricStructure;
use crate::chain::{sign, solve, switch_matrix, tensor, ChainComplex, ChainMap, Matrix, TensorLayout};
use crate::complex::SimplicialComplex;
use crate::error::{Error, ErrorKind, Result};

/// `Δ_s` of the standard simplex `[0..d]` as `(front, back, coefficient)` with
/// `front` and `back` faces given by vertex lists.
pub type DiagonalTerms = Vec<(Vec<usize>, Vec<usize>, i64)>;

type Chain = BTreeMap<(Vec<usize>, Vec<usize>), i64>;

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn concat(a: Vec<usize>, b: Vec<usize>) -> Vec<usize> {
    let mut a = a;
    a.extend(b);
    a
}

/// The interval-cut formulas for `s ≤ 2`.
pub fn closed_form(s: usize, d: usize) -> Option<DiagonalTerms> {
    let n = d as i64;
    let mut t = Vec::new();
    match s {
        0 => {
            for i in 0..=d {
                t.push((range(0, i), range(i, d), 1));
            }
        }
        1 => {
            for i in 0..=d {
                for j in i + 1..=d {
                    let (i_, j_) = (i as i64, j as i64);
                    t.push((concat(range(0, i), range(j, d)), range(i, j), sign((j_ - i_ - 1) * (n + i_ + 1))));
                }
            }
        }
        2 => {
            for i in 0..=d {
                for j in i + 1..=d {
                    for k in j + 1..=d {
                        let (i_, j_, k_) = (i as i64, j as i64, k as i64);
                        t.push((concat(range(0, i), range(j, k)), concat(range(i, j), range(k, d)), sign((j_ - i_ - 1) * (k_ - j_ - 1))));
                    }
                }
            }
        }
        _ => return None,
    }
    Some(t)
}

fn relabel(terms: &DiagonalTerms, verts: &[usize]) -> Chain {
    let mut out = Chain::new();
    for (a, b, c) in terms {
        let a = a.iter().map(|&v| verts[v]).collect();
        let b = b.iter().map(|&v| verts[v]).collect();
        *out.entry((a, b)).or_insert(0) += c;
    }
    out.retain(|_, v| *v != 0);
    out
}

fn faces(x: &[usize]) -> Vec<(Vec<usize>, i64)> {
    if x.len() < 2 {
        return Vec::new();
    }
    (0..x.len())
        .map(|k| {
            let mut f = x.to_vec();
            f.remove(k);
            (f, sign(k as i64))
        })
        .collect()
}

fn chain_boundary(x: &Chain) -> Chain {
    let mut out = Chain::new();
    for ((a, b), &v) in x {
        for (f, e) in faces(a) {
            *out.entry((f, b.clone())).or_insert(0) += v * e;
        }
        let sa = sign(a.len() as i64 - 1);
        for (f, e) in faces(b) {
            *out.entry((a.clone(), f)).or_insert(0) += v * e * sa;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn chain_switch(x: &Chain) -> Chain {
    x.iter().map(|((a, b), &v)| ((b.clone(), a.clone()), v * sign((a.len() as i64 - 1) * (b.len() as i64 - 1)))).collect()
}

fn subsets(d: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by_dim = vec![Vec::new(); d + 1];
    for mask in 1u32..(1 << (d + 1)) {
        let s: Vec<usize> = (0..=d).filter(|&v| mask & (1 << v) != 0).collect();
        by_dim[s.len() - 1].push(s);
    }
    for v in &mut by_dim {
        v.sort();
    }
    by_dim
}

/// Solves for `Δ_s` on the standard simplices `[0..d]`, `d ≤ max_dim`, given
/// `Δ_{s-1}` on them, one dimension at a time:
/// `dΔ_s x = Δ_s ∂x + (-1)^{|x|} (Δ_{s-1} x + (-1)^s T Δ_{s-1} x)`.
/// Faces reuse the solutions of lower dimensions, so the result is natural under
/// order-preserving inclusions. `NO_SOLUTION` would mean the relation is
/// inconsistent with `Δ_{s-1}`.
pub fn extend_diagonal(lower: &[DiagonalTerms], s: usize, max_dim: usize) -> Result<Vec<DiagonalTerms>> {
    assert!(s >= 1 && lower.len() > max_dim, "need Δ_{{s-1}} up to the requested dimension");
    let mut out: Vec<DiagonalTerms> = Vec::with_capacity(max_dim + 1);
    for d in 0..=max_dim {
        let x = range(0, d);
        let prev = relabel(&lower[d], &x);
        let mut rhs = Chain::new();
        for (f, e) in faces(&x) {
            for (k, v) in relabel(&out[d - 1], &f) {
                *rhs.entry(k).or_insert(0) += e * v;
            }
        }
        let ps = sign(d as i64);
        for (k, v) in &prev {
            *rhs.entry(k.clone()).or_insert(0) += ps * v;
        }
        for (k, v) in chain_switch(&prev) {
            *rhs.entry(k).or_insert(0) += ps * sign(s as i64) * v;
        }
        rhs.retain(|_, v| *v != 0);
        // unknowns: pairs of faces of [0..d] of total degree d + s
        let subs = subsets(d);
        let pairs = |deg: usize| -> Vec<(Vec<usize>, Vec<usize>)> {
            let mut v = Vec::new();
            for p in 0..=d.min(deg) {
                if deg - p > d {
                    continue;
                }
                for a in &subs[p] {
                    for b in &subs[deg - p] {
                        v.push((a.clone(), b.clone()));
                    }
                }
            }
            v
        };
        let cols = pairs(d + s);
        let rows = pairs(d + s - 1);
        let row_index: BTreeMap<&(Vec<usize>, Vec<usize>), usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut b = vec![0i64; rows.len()];
        for (k, v) in &rhs {
            match row_index.get(k) {
                Some(&i) => b[i] = *v,
                None => return Err(Error::new(ErrorKind::NoSolution, format!("right-hand side leaves the simplex at s = {s}, d = {d}"))),
            }
        }
        let mut trip = Vec::new();
        for (j, (a, bb)) in cols.iter().enumerate() {
            let unit: Chain = [((a.clone(), bb.clone()), 1)].into_iter().collect();
            for (k, v) in chain_boundary(&unit) {
                trip.push((row_index[&k], j, v));
            }
        }
        let m = Matrix::from_triplets(rows.len(), cols.len(), trip);
        let sol = solve(&m, &b).ok_or_else(|| Error::new(ErrorKind::NoSolution, format!("no integral Δ_{s} on the {d}-simplex")))?;
        let terms: DiagonalTerms = cols.into_iter().zip(sol).filter(|(_, v)| *v != 0).map(|((a, bb), v)| (a, bb, v)).collect();
        out.push(terms);
    }
    Ok(out)
}

/// `Δ_s` on standard simplices for `s ≤ k`, `d ≤ max_dim`.
#[derive(Clone, Debug)]
pub struct DiagonalModel {
    terms: Vec<Vec<DiagonalTerms>>,
}

impl DiagonalModel {
    pub fn new(k: usize, max_dim: usize) -> Result<Self> {
        let mut terms: Vec<Vec<DiagonalTerms>> = Vec::with_capacity(k + 1);
        for s in 0..=k {
            let level = match (0..=max_dim).map(|d| closed_form(s, d)).collect::<Option<Vec<_>>>() {
                Some(l) => l,
                None => extend_diagonal(&terms[s - 1], s, max_dim).map_err(|e| Error::new(ErrorKind::TruncationTooSmall, format!("{e}")))?,
            };
            terms.push(level);
        }
        Ok(DiagonalModel { terms })
    }

    pub fn terms(&self, s: usize, d: usize) -> &DiagonalTerms {
        &self.terms[s][d]
    }

    pub fn levels(&self) -> usize {
        self.terms.len()
    }
}

/// The family `Δ_0, ..., Δ_k` on `C(S)`, each a degree-`s` map `C -> C ⊗ C`.
#[derive(Clone, Debug)]
pub struct HigherDiagonals {
    pub complex: ChainComplex,
    pub maps: Vec<ChainMap>,
}

/// `Δ_0` is the Alexander–Whitney diagonal; higher `Δ_s` are cup-`s` witnesses with
/// `dΔ_s - Δ_s d = (-1)^{|x|} (1 + (-1)^s T) Δ_{s-1}`.
pub fn higher_diagonals(s: &SimplicialComplex, k: usize) -> Result<HigherDiagonals> {
    Ok(HigherDiagonals::from_model(s, &DiagonalModel::new(k, s.dim())?))
}

impl HigherDiagonals {
    /// Transfers a model on standard simplices to `S`.
    pub fn from_model(s: &SimplicialComplex, model: &DiagonalModel) -> HigherDiagonals {
    let k = model.levels() - 1;
    let c = s.chain_complex();
    let cc = tensor(&c, &c);
    let lay = TensorLayout::new(&c, &c);
    let mut maps = Vec::with_capacity(k + 1);
    for level in 0..=k {
        let mut comps = BTreeMap::new();
        for d in 0..=s.dim() {
            let mut trip = Vec::new();
            for (j, x) in s.simplices(d).iter().enumerate() {
                for (a, b, v) in model.terms(level, d) {
                    let fa: Vec<usize> = a.iter().map(|&i| x[i]).collect();
                    let fb: Vec<usize> = b.iter().map(|&i| x[i]).collect();
                    let (pa, pb) = (fa.len() as i32 - 1, fb.len() as i32 - 1);
                    let row = lay.index(pa, s.position(&fa).expect("face of a simplex"), pb, s.position(&fb).expect("face of a simplex"));
                    trip.push((row, j, *v));
                }
            }
            comps.insert(d as i32, Matrix::from_triplets(cc.rank(d as i32 + level as i32), s.count(d), trip));
        }
        maps.push(ChainMap::from_components(c.clone(), cc.clone(), level as i32, comps));
    }
    HigherDiagonals { complex: c, maps }
    }

    pub fn k(&self) -> usize {
        self.maps.len() - 1
    }

    /// First `(s, p)` at which the defining relation fails on `C_p`.
    pub fn defect(&self) -> Option<(usize, i32)> {
        let c = &self.complex;
        let cc = &self.maps[0].target;
        for (s, f) in self.maps.iter().enumerate() {
            let sh = s as i32;
            for p in c.degrees() {
                let lhs = cc.d(p + sh).mul(&f.component(p)).sub(&f.component(p - 1).mul(&c.d(p)));
                let rhs = if s == 0 {
                    Matrix::zeros(lhs.rows(), lhs.cols())
                } else {
                    let g = self.maps[s - 1].component(p);
                    g.add_scaled(&switch_matrix(c, p + sh - 1).mul(&g), sign(sh as i64)).scale(sign(p as i64))
                };
                if lhs != rhs {
                    return Some((s, p));
                }
            }
        }
        None
    }

    /// `φ_s = Δ_s(z)` for an `n`-cycle `z`.
    pub fn apply(&self, n: i32, z: &[i64]) -> Vec<Vec<i64>> {
        self.maps.iter().map(|f| f.component(n).mul_vec(z)).collect()
    }
}

/// `φ_s = Δ_s(z)`: an `n`-dimensional symmetric structure on `C(S)`.
pub fn symmetric_construction(s: &SimplicialComplex, z: &[i64], n: usize, k: usize) -> Result<SymmetricStructure> {
    let c = s.chain_complex();
    if z.len() != c.rank(n as i32) {
        return Err(Error::new(ErrorKind::ShapeMismatch, "class has the wrong length"));
    }
    if c.d(n as i32).mul_vec(z).iter().any(|&x| x != 0) {
        return Err(Error::new(ErrorKind::NotACycle, "the class is not a cycle"));
    }
    let h = higher_diagonals(s, k)?;
    SymmetricStructure::new(h.complex.clone(), n as i32, h.apply(n as i32, z))
}

/// Projection of both factors of `(C ⊗ C)_m` to a quotient basis: `keep[p]` lists the
/// basis indices of `C_p` that survive, in order.
pub fn project_square(c: &ChainComplex, q: &ChainComplex, keep: &BTreeMap<i32, Vec<usize>>, m: i32, x: &[i64]) -> Vec<i64> {
    let lc = TensorLayout::new(c, c);
    let lq = TensorLayout::new(q, q);
    let pos: BTreeMap<(i32, usize), usize> = keep.iter().flat_map(|(&p, v)| v.iter().enumerate().map(move |(j, &i)| ((p, i), j))).collect();
    let mut out = vec![0i64; lq.rank(m)];
    for (k, &v) in x.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let (p, i, r, j) = lc.locate(m, k);
        if let (Some(&a), Some(&b)) = (pos.get(&(p, i)), pos.get(&(r, j))) {
            out[lq.index(p, a, r, b)] += v;
        }
    }
    out
}

/// The relative symmetric construction on `C(S, S_0)` where `S_0` is the
/// subcomplex of simplices accepted by `in_sub`; `z` must be a relative cycle.
pub fn relative_symmetric_construction(s: &SimplicialComplex, in_sub: impl Fn(&[usize]) -> bool, z: &[i64], n: usize, k: usize) -> Result<SymmetricStructure> {
    let c = s.chain_complex();
    let (q, keep) = s.chain_complex_where(|x| !in_sub(x));
    let dz = c.d(n as i32).mul_vec(z);
    let sub_ok = dz.iter().enumerate().all(|(i, &v)| v == 0 || in_sub(&s.simplices(n - 1)[i]));
    if !sub_ok {
        return Err(Error::new(ErrorKind::NotACycle, "the class is not a relative cycle"));
    }
    let h = higher_diagonals(s, k)?;
    let phi = h.apply(n as i32, z).iter().enumerate().map(|(l, x)| project_square(&c, &q, &keep, n as i32 + l as i32, x)).collect();
    SymmetricStructure::new(q, n as i32, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn standard(d: usize) -> SimplicialComplex {
        let subs = subsets(d);
        SimplicialComplex::from_simplices((0..=d).map(|v| format!("{v}")).collect(), subs.into_iter().flatten())
    }

    fn from_tops(tops: &[&[usize]], nv: usize) -> SimplicialComplex {
        let mut all = Vec::new();
        for t in tops {
            for mask in 1u32..(1 << t.len()) {
                all.push((0..t.len()).filter(|&i| mask & (1 << i) != 0).map(|i| t[i]).collect::<Vec<_>>());
            }
        }
        SimplicialComplex::from_simplices((0..nv).map(|v| format!("{v}")).collect::<Vec<String>>(), all)
    }

    fn circle() -> (SimplicialComplex, Vec<i64>) {
        let s = from_tops(&[&[0, 1], &[1, 2], &[0, 2]], 3);
        // [01] + [12] - [02]
        let z = s.simplices(1).iter().map(|e| if *e == vec![0, 2] { -1 } else { 1 }).collect();
        (s, z)
    }

    fn sphere() -> (SimplicialComplex, Vec<i64>) {
        let s = from_tops(&[&[1, 2, 3], &[0, 2, 3], &[0, 1, 3], &[0, 1, 2]], 4);
        let z = s.simplices(2).iter().map(|t| sign((0..4).find(|v| !t.contains(v)).unwrap() as i64)).collect();
        (s, z)
    }

    #[test]
    fn vertex_and_edge() {
        let s = standard(0);
        let h = higher_diagonals(&s, 3).unwrap();
        assert_eq!(h.maps[0].component(0), Matrix::identity(1));
        assert!(h.maps[1..].iter().all(|f| f.is_zero()));
        let s = standard(1);
        let h = higher_diagonals(&s, 1).unwrap();
        let lay = TensorLayout::new(&h.complex, &h.complex);
        let img = h.maps[0].component(1).mul_vec(&[1]);
        let mut want = vec![0; lay.rank(1)];
        want[lay.index(0, 0, 1, 0)] = 1;
        want[lay.index(1, 0, 0, 1)] = 1;
        assert_eq!(img, want);
    }

    #[test]
    fn closed_forms_satisfy_relations() {
        for d in 0..=5 {
            let h = higher_diagonals(&standard(d), 2).unwrap();
            assert_eq!(h.defect(), None, "d = {d}");
        }
    }

    #[test]
    fn solver_extends_to_higher_levels() {
        for d in 0..=4 {
            let h = higher_diagonals(&standard(d), 5).unwrap();
            assert_eq!(h.defect(), None, "d = {d}");
        }
    }

    #[test]
    fn solver_reproduces_cup_one_on_an_edge() {
        let lower: Vec<DiagonalTerms> = (0..=1).map(|d| closed_form(0, d).unwrap()).collect();
        let solved = extend_diagonal(&lower, 1, 1).unwrap();
        assert!(solved[0].is_empty());
        assert_eq!(solved[1], closed_form(1, 1).unwrap());
    }

    #[test]
    fn solver_output_satisfies_relation_from_closed_forms() {
        let lower: Vec<DiagonalTerms> = (0..=4).map(|d| closed_form(1, d).unwrap()).collect();
        let solved = extend_diagonal(&lower, 2, 4).unwrap();
        let mut model = DiagonalModel::new(2, 4).unwrap();
        model.terms[2] = solved;
        let h = HigherDiagonals::from_model(&standard(4), &model);
        assert_eq!(h.defect(), None);
    }

    #[test]
    fn broken_sign_is_detected() {
        let s = standard(2);
        let mut h = higher_diagonals(&s, 1).unwrap();
        let m = h.maps[1].component(2).scale(-1);
        let mut comps = h.maps[1].components().clone();
        comps.insert(2, m);
        h.maps[1] = ChainMap::from_components(h.complex.clone(), h.maps[1].target.clone(), 1, comps);
        assert_eq!(h.defect(), Some((1, 2)));
    }

    #[test]
    fn natural_under_inclusion() {
        let big = standard(3);
        let small = from_tops(&[&[0, 1, 3], &[1, 2]], 4);
        let hb = higher_diagonals(&big, 3).unwrap();
        let hs = higher_diagonals(&small, 3).unwrap();
        let lb = TensorLayout::new(&hb.complex, &hb.complex);
        let ls = TensorLayout::new(&hs.complex, &hs.complex);
        for lvl in 0..=3 {
            for d in 0..=2 {
                for (j, x) in small.simplices(d).iter().enumerate() {
                    let jb = big.position(x).unwrap();
                    let vs = hs.maps[lvl].component(d as i32).col(j).to_vec();
                    let vb = hb.maps[lvl].component(d as i32).col(jb).to_vec();
                    let ms: BTreeMap<(Vec<usize>, Vec<usize>), i64> = vs
                        .iter()
                        .map(|&(r, v)| {
                            let (p, a, q, b) = ls.locate(d as i32 + lvl as i32, r);
                            ((small.simplices(p as usize)[a].clone(), small.simplices(q as usize)[b].clone()), v)
                        })
                        .collect();
                    let mb: BTreeMap<(Vec<usize>, Vec<usize>), i64> = vb
                        .iter()
                        .map(|&(r, v)| {
                            let (p, a, q, b) = lb.locate(d as i32 + lvl as i32, r);
                            ((big.simplices(p as usize)[a].clone(), big.simplices(q as usize)[b].clone()), v)
                        })
                        .collect();
                    assert_eq!(ms, mb);
                }
            }
        }
    }

    #[test]
    fn circle_construction_is_poincare() {
        let (s, z) = circle();
        let phi = symmetric_construction(&s, &z, 1, 2).unwrap();
        assert!(phi.is_poincare());
        let doubled: Vec<i64> = z.iter().map(|x| 2 * x).collect();
        let phi2 = symmetric_construction(&s, &doubled, 1, 2).unwrap();
        let v = phi2.poincare();
        assert!(v.cycle && !v.holds);
        assert_eq!(v.cone_homology.unwrap().describe(), "H0=Z/2 H1=Z/2");
    }

    #[test]
    fn circle_cup_one_witness() {
        // Δ_1(z) evaluated on u ⊗ u for the generator u of H^1 is 1 mod 2: Sq^0 u = u.
        let (s, z) = circle();
        let phi = symmetric_construction(&s, &z, 1, 1).unwrap();
        let c = phi.complex();
        let lay = TensorLayout::new(c, c);
        let e01 = s.position(&[0, 1]).unwrap();
        let val = phi.phi(1)[lay.index(1, e01, 1, e01)];
        assert_eq!(val.rem_euclid(2), 1);
    }

    #[test]
    fn sphere_construction_is_poincare() {
        let (s, z) = sphere();
        let phi = symmetric_construction(&s, &z, 2, 3).unwrap();
        assert!(phi.is_poincare());
        let (bc, _) = phi.boundary().unwrap();
        assert!(bc.is_acyclic());
    }

    #[test]
    fn not_a_cycle() {
        let (s, _) = circle();
        let e = symmetric_construction(&s, &[1, 0, 0], 1, 1).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotACycle);
    }

    #[test]
    fn relative_construction_on_an_edge() {
        let s = standard(1);
        let phi = relative_symmetric_construction(&s, |x| x.len() == 1, &[1], 1, 2).unwrap();
        assert!(!phi.is_poincare());
        assert_eq!(phi.complex().total_rank(), 1);
        let (bc, _) = phi.boundary().unwrap();
        assert_eq!(bc.homology().describe(), "H0=Z^2");
        let e = relative_symmetric_construction(&s, |x| x == [0], &[1], 1, 2).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotACycle);
    }

    #[test]
    fn boundary_of_simplicial_structures_is_poincare() {
        for (s, z, n) in [(circle().0, circle().1, 1), (sphere().0, sphere().1, 2)] {
            let mut z2 = z.clone();
            z2.iter_mut().for_each(|x| *x *= 3);
            let phi = symmetric_construction(&s, &z2, n, n + 1).unwrap();
            let (bc, bphi) = phi.boundary().unwrap();
            assert!(!bc.is_acyclic());
            assert!(bphi.is_cycle());
            assert!(bphi.is_poincare());
        }
    }
}

//! Dissected symmetric signatures: the symmetric construction of a manifold split
//! over the dual cells of its ball complex.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::manifold::{fundamental_class, ManifoldComplex, Promise};
use crate::chain::{slant, ChainComplex, ChainMap, TensorLayout};
use crate::complex::DerivedSubdivision;
use crate::error::{Error, ErrorKind, Result};
use crate::graded::{dissected_subdivision, GradedComplex};
use crate::structured::diagonal::{higher_diagonals, project_square, HigherDiagonals};
use crate::structured::{GradedStructure, PoincareVerdict, SymmetricStructure};

/// Classes `[D(σ)] ∈ C_{n-|σ|}(X')` of the dual cells, in flag coordinates.
///
/// Over a top cell `[D(σ)] = z_σ (σ)`; below,
/// `[D(τ)] = -(-1)^{|τ|} τ · Σ_{σ > τ} [τ : σ] [D(σ)]` over the cofaces one
/// dimension up, where `τ ·` prepends `τ` to a flag.
pub fn local_classes(m: &ManifoldComplex, sub: &DerivedSubdivision, z: &[i64]) -> Vec<Vec<i64>> {
    let x = &**m.complex();
    let s = &sub.simplicial;
    let n = m.dim();
    let mut out: Vec<Vec<i64>> = vec![Vec::new(); x.len()];
    for d in (0..=n).rev() {
        for &tau in x.cells_of_dim(d) {
            let deg = n - d;
            let mut v = vec![0i64; s.count(deg)];
            if d == n {
                v[s.position(&[tau]).expect("vertex flag")] = z[x.position(tau)];
            } else {
                let sg = if d % 2 == 0 { -1 } else { 1 };
                for &(sigma, e) in x.cofaces(tau) {
                    if x.cell_dim(sigma) != d + 1 {
                        continue;
                    }
                    for (k, &c) in out[sigma].iter().enumerate() {
                        if c != 0 {
                            let mut flag = Vec::with_capacity(deg + 1);
                            flag.push(tau);
                            flag.extend_from_slice(&s.simplices(deg - 1)[k]);
                            v[s.position(&flag).expect("prepended flag")] += sg * e * c;
                        }
                    }
                }
            }
            out[tau] = v;
        }
    }
    out
}

/// Symmetric signature of a manifold dissected over its balls.
#[derive(Clone, Debug)]
pub struct DissectedSignature {
    pub manifold: ManifoldComplex,
    pub subdivision: DerivedSubdivision,
    /// The fundamental class in the top cells of the manifold.
    pub class: Vec<i64>,
    /// `[D(σ)]` in flag coordinates.
    pub local_classes: Vec<Vec<i64>>,
    pub structure: GradedStructure,
    /// Structure of the whole subdivision: absolute for closed manifolds, on
    /// `C(M', ∂M')` in both factors otherwise.
    pub global: SymmetricStructure,
    pub verdicts: Vec<PoincareVerdict>,
    /// Poincaré (closed) or Lefschetz (with boundary) duality of the assembly.
    pub global_verdict: PoincareVerdict,
}

impl DissectedSignature {
    pub fn complex(&self) -> &Arc<GradedComplex> {
        self.structure.complex()
    }

    pub fn dim(&self) -> usize {
        self.manifold.dim()
    }

    pub fn is_relative(&self) -> bool {
        self.manifold.promise() == Promise::WithBoundary
    }

    /// Balls at which Poincaré duality is required: those off the boundary.
    pub fn required(&self, sigma: usize) -> bool {
        !self.manifold.in_boundary(sigma)
    }

    /// Every required ball is locally Poincaré.
    pub fn passes(&self) -> bool {
        self.verdicts.iter().enumerate().all(|(s, v)| v.holds || !self.required(s))
    }

    /// Balls that are not locally Poincaré.
    pub fn non_poincare_locus(&self) -> Vec<usize> {
        self.verdicts.iter().enumerate().filter(|(_, v)| !v.holds).map(|(s, _)| s).collect()
    }

    /// `d[D(σ)] = -(-1)^{|σ|} Σ_{ρ > σ} [σ : ρ] [D(ρ)]` for every ball off the boundary.
    pub fn compatibility_defects(&self) -> Vec<usize> {
        let x = &**self.manifold.complex();
        let s = &self.subdivision.simplicial;
        let c = s.chain_complex();
        let n = self.dim();
        let mut bad = Vec::new();
        for sigma in 0..x.len() {
            let d = x.cell_dim(sigma);
            if d == n || !self.required(sigma) {
                continue;
            }
            let lhs = c.d((n - d) as i32).mul_vec(&self.local_classes[sigma]);
            let mut rhs = vec![0i64; lhs.len()];
            let sg = if d % 2 == 0 { -1 } else { 1 };
            for &(rho, e) in x.cofaces(sigma) {
                if x.cell_dim(rho) == d + 1 {
                    for (k, &v) in self.local_classes[rho].iter().enumerate() {
                        rhs[k] += sg * e * v;
                    }
                }
            }
            if lhs != rhs {
                bad.push(sigma);
            }
        }
        bad
    }
}

fn default_truncation(n: usize) -> usize {
    n + 1
}

/// Dissected signature of a closed orientable manifold complex.
pub fn dissected_signature(m: &ManifoldComplex) -> Result<DissectedSignature> {
    if m.promise() != Promise::ClosedOrientable {
        return Err(Error::new(ErrorKind::NotPseudomanifold, "dissected_signature needs a closed manifold; use the relative version"));
    }
    build(m, None, default_truncation(m.dim()))
}

/// Dissected signature over `(L, ∂L)`; a closed input gives the absolute signature.
pub fn relative_dissected_signature(m: &ManifoldComplex) -> Result<DissectedSignature> {
    build(m, None, default_truncation(m.dim()))
}

/// As [`relative_dissected_signature`] with an explicit fundamental class and truncation.
pub fn dissected_signature_with(m: &ManifoldComplex, class: Vec<i64>, k: usize) -> Result<DissectedSignature> {
    build(m, Some(class), k)
}

fn build(m: &ManifoldComplex, class: Option<Vec<i64>>, k: usize) -> Result<DissectedSignature> {
    let z = match class {
        Some(z) => z,
        None => fundamental_class(m)?,
    };
    let x = m.complex();
    let n = m.dim();
    if z.len() != x.cells_of_dim(n).len() {
        return Err(Error::new(ErrorKind::ShapeMismatch, "class must have one coefficient per top cell"));
    }
    let (g, sub) = dissected_subdivision(x);
    let g = Arc::new(g);
    let locals = local_classes(m, &sub, &z);
    let s = &sub.simplicial;
    let c = sub.chain_complex();
    let h = higher_diagonals(s, k)?;
    let mut pieces = Vec::with_capacity(x.len());
    for sigma in 0..x.len() {
        pieces.push(piece(&g, &c, &h, sigma, (n - x.cell_dim(sigma)) as i32, &locals[sigma])?);
    }
    let structure = GradedStructure::new(g.clone(), n as i32, pieces)?;
    let verdicts = structure.local_verdicts();
    let total: Vec<i64> = x.cells_of_dim(0).iter().fold(vec![0i64; s.count(n)], |mut acc, &v| {
        for (a, b) in acc.iter_mut().zip(&locals[v]) {
            *a += b;
        }
        acc
    });
    let (global, global_verdict) = global_structure(m, &sub, &c, &h, &total)?;
    Ok(DissectedSignature { manifold: m.clone(), subdivision: sub, class: z, local_classes: locals, structure, global, verdicts, global_verdict })
}

/// `Δ_s([D(σ)])` projected to `C(σ) ⊗ C(σ)`.
fn piece(g: &GradedComplex, c: &ChainComplex, h: &HigherDiagonals, sigma: usize, deg: i32, local: &[i64]) -> Result<SymmetricStructure> {
    let comp = g.component(sigma).clone();
    let keep: BTreeMap<i32, Vec<usize>> = c.degrees().map(|p| (p, g.range(p, sigma).collect())).collect();
    let phi = h.apply(deg, local).iter().enumerate().map(|(l, y)| project_square(c, &comp, &keep, deg + l as i32, y)).collect();
    SymmetricStructure::from_chains(comp, deg, phi)
}

fn global_structure(m: &ManifoldComplex, sub: &DerivedSubdivision, c: &ChainComplex, h: &HigherDiagonals, total: &[i64]) -> Result<(SymmetricStructure, PoincareVerdict)> {
    let n = m.dim() as i32;
    let phi = h.apply(n, total);
    if m.promise() == Promise::ClosedOrientable {
        let s = SymmetricStructure::new(c.clone(), n, phi)?;
        let v = s.poincare();
        return Ok((s, v));
    }
    let (q, keep) = sub.simplicial.chain_complex_where(|f| !m.in_boundary(f[f.len() - 1]));
    let rel: Vec<Vec<i64>> = phi.iter().enumerate().map(|(l, y)| project_square(c, &q, &keep, n + l as i32, y)).collect();
    let s = SymmetricStructure::new(q.clone(), n, rel)?;
    // Lefschetz: only the second factor is reduced modulo the boundary
    let lay = TensorLayout::new(c, c);
    let lq = TensorLayout::new(c, &q);
    let pos: BTreeMap<(i32, usize), usize> = keep.iter().flat_map(|(&p, v)| v.iter().enumerate().map(move |(j, &i)| ((p, i), j))).collect();
    let mut y = vec![0i64; lq.rank(n)];
    for (k, &v) in phi[0].iter().enumerate() {
        if v != 0 {
            let (p, i, r, j) = lay.locate(n, k);
            if let Some(&b) = pos.get(&(r, j)) {
                y[lq.index(p, i, r, b)] += v;
            }
        }
    }
    let f: ChainMap = slant(c, &q, n, &y);
    let verdict = if f.is_chain_map() {
        let e = f.equivalence()?;
        PoincareVerdict { holds: e.holds, cycle: true, cone_homology: Some(e.cone_homology) }
    } else {
        PoincareVerdict { holds: false, cycle: false, cone_homology: None }
    };
    Ok((s, verdict))
}

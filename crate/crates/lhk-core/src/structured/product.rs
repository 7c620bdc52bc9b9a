//! Products of symmetric and quadratic structures.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::structure::{switch_vec, QuadraticStructure, SymmetricStructure};
use super::w::w_diagonal;
use crate::chain::{sign, tensor, ChainComplex, TensorLayout};
use crate::error::{Error, ErrorKind, Result};

/// `μ((a ⊗ b) ⊗ (c ⊗ e)) = (-1)^{|b||c|} (a ⊗ c) ⊗ (b ⊗ e)` for
/// `x ∈ (C ⊗ C)_p`, `y ∈ (D ⊗ D)_q`, landing in `(E ⊗ E)_{p+q}` with `E = C ⊗ D`.
pub fn interchange(c: &ChainComplex, d: &ChainComplex, e: &ChainComplex, p: i32, x: &[i64], q: i32, y: &[i64], coeff: i64, out: &mut [i64]) {
    let lc = TensorLayout::new(c, c);
    let ld = TensorLayout::new(d, d);
    let lcd = TensorLayout::new(c, d);
    let le = TensorLayout::new(e, e);
    let xs: Vec<_> = x.iter().enumerate().filter(|(_, &v)| v != 0).map(|(k, &v)| (lc.locate(p, k), v)).collect();
    let ys: Vec<_> = y.iter().enumerate().filter(|(_, &v)| v != 0).map(|(k, &v)| (ld.locate(q, k), v)).collect();
    for &((pa, ia, pb, ib), u) in &xs {
        for &((pc, ic, pe, ie), v) in &ys {
            let s = sign(pb as i64 * pc as i64);
            let l = lcd.index(pa, ia, pc, ic);
            let r = lcd.index(pb, ib, pe, ie);
            out[le.index(pa + pc, l, pb + pe, r)] += coeff * s * u * v;
        }
    }
}

fn t_power(c: &ChainComplex, deg: i32, x: &[i64], i: usize) -> Vec<i64> {
    if i % 2 == 1 {
        switch_vec(c, deg, x)
    } else {
        x.to_vec()
    }
}

/// `(C ⊗ D, φ ⊗ φ')` with `(φ ⊗ φ')_s = Σ_i (-1)^{i(m+s-i)} μ(φ_i ⊗ T^i φ'_{s-i})`,
/// `m = dim φ'`: the terms of the diagonal of `W` paired with the two structures.
/// The output is truncated at `k_out` (default: the smaller input truncation).
pub fn product_sym_sym(a: &SymmetricStructure, b: &SymmetricStructure, k_out: Option<usize>) -> Result<SymmetricStructure> {
    let k_in = a.truncation().min(b.truncation());
    let k = k_out.unwrap_or(k_in);
    if k > k_in {
        return Err(Error::new(ErrorKind::TruncationTooSmall, format!("product needs φ_s up to {k}, inputs have {k_in}")));
    }
    let (c, d) = (a.complex(), b.complex());
    let e = tensor(c, d);
    let le = TensorLayout::new(&e, &e);
    let (n, m) = (a.dim(), b.dim());
    let wd = w_diagonal(k);
    let mut phi = Vec::with_capacity(k + 1);
    for s in 0..=k {
        let mut x = vec![0i64; le.rank(n + m + s as i32)];
        for &(i, _, j, tb, coeff) in &wd.terms[s] {
            let y = t_power(d, m + j as i32, b.phi(j), tb);
            interchange(c, d, &e, n + i as i32, a.phi(i), m + j as i32, &y, coeff * sign(i as i64 * m as i64), &mut x);
        }
        phi.push(x);
    }
    let out = SymmetricStructure::from_chains(e, n + m, phi)?;
    if a.is_cycle() && b.is_cycle() {
        if let Some(s) = out.defect() {
            return Err(Error::new(ErrorKind::NotACycle, format!("product fails the relation at s = {s}")));
        }
    }
    Ok(out)
}

/// `(C ⊗ D, φ ⊗ ψ)` with `(φ ⊗ ψ)_s = Σ_t (-1)^{sm + t(t+1)/2} μ(φ_t ⊗ T^t ψ_{s+t})`,
/// `m = dim φ`. Needs `φ_t` for every `t` with `ψ_{s+t} ≠ 0`.
pub fn product_sym_quad(a: &SymmetricStructure, b: &QuadraticStructure) -> Result<QuadraticStructure> {
    let top = b.chains().iter().rposition(|x| x.iter().any(|&v| v != 0)).unwrap_or(0);
    if top > a.truncation() {
        return Err(Error::new(ErrorKind::TruncationTooSmall, format!("product needs φ_t up to {top}, have {}", a.truncation())));
    }
    let (c, d) = (a.complex(), b.complex());
    let e = tensor(c, d);
    let le = TensorLayout::new(&e, &e);
    let (m, n) = (a.dim(), b.dim());
    let mut psi = Vec::with_capacity(b.chains().len());
    for s in 0..b.chains().len() {
        let mut x = vec![0i64; le.rank(m + n - s as i32)];
        for t in 0..=a.truncation() {
            let Some(q) = b.chains().get(s + t) else { break };
            let y = t_power(d, n - (s + t) as i32, q, t);
            let coeff = sign(s as i64 * m as i64 + (t * (t + 1) / 2) as i64);
            interchange(c, d, &e, m + t as i32, a.phi(t), n - (s + t) as i32, &y, coeff, &mut x);
        }
        psi.push(x);
    }
    let out = QuadraticStructure::from_chains(e, m + n, psi)?;
    if a.is_cycle() && b.is_cycle() {
        if let Some(s) = out.defect() {
            return Err(Error::new(ErrorKind::NotACycle, format!("product fails the relation at s = {s}")));
        }
    }
    Ok(out)
}

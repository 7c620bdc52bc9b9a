//! Small standard complexes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::ball::{BallComplex, RawCell};

pub fn point_raw() -> Vec<RawCell> {
    vec![RawCell::new("p", 0, &[])]
}

pub fn point() -> BallComplex {
    BallComplex::new(&point_raw()).unwrap()
}

/// Two vertices and the edge `e` with `∂e = v1 - v0`.
pub fn interval_raw() -> Vec<RawCell> {
    vec![RawCell::new("v0", 0, &[]), RawCell::new("v1", 0, &[]), RawCell::new("e", 1, &[("v1", 1), ("v0", -1)])]
}

pub fn interval() -> BallComplex {
    BallComplex::new(&interval_raw()).unwrap()
}

/// One square 2-cell `f` on the cycle of edges `e0 e1 e2 e3`.
pub fn square_cell_raw() -> Vec<RawCell> {
    let mut raw: Vec<RawCell> = (0..4).map(|i| RawCell::new(format!("v{i}"), 0, &[])).collect();
    for i in 0..4 {
        let (a, b) = (format!("v{i}"), format!("v{}", (i + 1) % 4));
        raw.push(RawCell::new(format!("e{i}"), 1, &[(b.as_str(), 1), (a.as_str(), -1)]));
    }
    raw.push(RawCell::new("f", 2, &[("e0", 1), ("e1", 1), ("e2", 1), ("e3", 1)]));
    raw
}

pub fn square_cell() -> BallComplex {
    BallComplex::new(&square_cell_raw()).unwrap()
}

/// `interval^k` (the square for `k = 2`, the cube for `k = 3`).
pub fn cube(k: usize) -> BallComplex {
    let i = interval();
    let mut x = point();
    for j in 0..k {
        x = if j == 0 { i.clone() } else { x.product(&i) };
    }
    x
}

/// Circle with vertices `a, b, c` and edges `ab, bc, ca`.
pub fn circle3_raw() -> Vec<RawCell> {
    vec![
        RawCell::new("a", 0, &[]),
        RawCell::new("b", 0, &[]),
        RawCell::new("c", 0, &[]),
        RawCell::new("ab", 1, &[("b", 1), ("a", -1)]),
        RawCell::new("bc", 1, &[("c", 1), ("b", -1)]),
        RawCell::new("ca", 1, &[("a", 1), ("c", -1)]),
    ]
}

pub fn circle3() -> BallComplex {
    BallComplex::new(&circle3_raw()).unwrap()
}

pub fn torus() -> BallComplex {
    let c = circle3();
    c.product(&c)
}

/// The simplicial complex generated by the given top simplices; a simplex is named
/// by the concatenation of its sorted vertex names, and faces carry the alternating
/// signs of the sorted order.
pub fn simplicial_raw(tops: &[&[&str]]) -> Vec<RawCell> {
    let mut all: BTreeSet<(usize, Vec<String>)> = BTreeSet::new();
    for t in tops {
        let mut v: Vec<String> = t.iter().map(|s| String::from(*s)).collect();
        v.sort();
        let n = v.len();
        for mask in 1u32..(1 << n) {
            let s: Vec<String> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| v[i].clone()).collect();
            all.insert((s.len() - 1, s));
        }
    }
    all.into_iter()
        .map(|(d, s)| {
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..s.len())
                    .map(|i| {
                        let f: Vec<String> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
                        (f.concat(), if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            };
            RawCell { id: s.concat(), dim: d, faces }
        })
        .collect()
}

/// Octahedral 2-sphere: poles `0`, `5` and equator `1 2 3 4`.
pub fn octahedron_raw() -> Vec<RawCell> {
    let eq = ["1", "2", "3", "4"];
    let mut tops: Vec<[&str; 3]> = Vec::new();
    for i in 0..4 {
        let (a, b) = (eq[i], eq[(i + 1) % 4]);
        tops.push(["0", a, b]);
        tops.push(["5", a, b]);
    }
    let refs: Vec<&[&str]> = tops.iter().map(|t| t.as_slice()).collect();
    simplicial_raw(&refs)
}

pub fn octahedron() -> BallComplex {
    BallComplex::new(&octahedron_raw()).unwrap()
}

/// A Möbius band made of three squares `Q0, Q1, Q2` glued along the rungs
/// `v0, v1, v2`, with the last gluing reversed.
pub fn mobius_raw() -> Vec<RawCell> {
    let mut raw: Vec<RawCell> = ["t0", "t1", "t2", "b0", "b1", "b2"].iter().map(|v| RawCell::new(*v, 0, &[])).collect();
    let edge = |id: &str, from: &str, to: &str| RawCell::new(id, 1, &[(to, 1), (from, -1)]);
    raw.push(edge("v0", "b0", "t0"));
    raw.push(edge("v1", "b1", "t1"));
    raw.push(edge("v2", "b2", "t2"));
    raw.push(edge("h0", "t0", "t1"));
    raw.push(edge("h1", "t1", "t2"));
    raw.push(edge("g0", "b0", "b1"));
    raw.push(edge("g1", "b1", "b2"));
    raw.push(edge("h2", "t2", "b0"));
    raw.push(edge("g2", "b2", "t0"));
    raw.push(RawCell::new("Q0", 2, &[("g0", 1), ("v1", 1), ("h0", -1), ("v0", -1)]));
    raw.push(RawCell::new("Q1", 2, &[("g1", 1), ("v2", 1), ("h1", -1), ("v1", -1)]));
    raw.push(RawCell::new("Q2", 2, &[("v2", 1), ("h2", 1), ("v0", 1), ("g2", -1)]));
    raw
}

pub fn mobius() -> BallComplex {
    BallComplex::new(&mobius_raw()).unwrap()
}

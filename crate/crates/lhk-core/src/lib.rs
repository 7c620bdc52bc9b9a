//! Exact chain-level algebra over ball complexes.
//!
//! The crate is organised bottom-up:
//!
//! - [`chain`]: sparse integer matrices, Smith normal form, homology, integer chain
//!   complexes, cones, tensors, Hom complexes and chain-equivalence certificates.
//! - [`complex`]: ball complexes, stars, intervals, products, derived subdivisions and
//!   dual cells.
//! - [`graded`]: chain complexes graded over the cells of a ball complex (the
//!   categories `A^*(X)` and `A_*(X)` with integer coefficients), their assembly,
//!   the chain duality `T`, its counit and the switch isomorphisms.
//! - [`structured`]: the resolution `W`, higher diagonals, symmetric and quadratic
//!   structures, Poincaré predicates and products.
//! - [`signatures`]: fundamental classes, dissected symmetric signatures and the
//!   product and suspension checks.
//!
//! All arithmetic is over `i64` with checked operations; an overflow panics rather
//! than producing a wrong answer.
//!
//! # Sign conventions
//!
//! One table is used throughout.
//!
//! | object | convention |
//! |---|---|
//! | differential | `d_n : C_n -> C_{n-1}` |
//! | degree-`s` chain map | `d f = (-1)^s f d` |
//! | Hom complex | `d(φ) = d_D φ - (-1)^n φ d_C` for `φ` of degree `n` |
//! | tensor | `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db` |
//! | switch | `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a` |
//! | dual over `Z` | `(TC)_n = (C_{-n})^*`, differential the plain transpose |
//! | signed suspension | `(Σ^k C)_n = C_{n-k}`, `d ↦ (-1)^k d` |
//! | mapping cone | `cone(f)_n = D_n ⊕ C_{n-1}`, `d(y, x) = (dy + f x, -dx)` |
//! | tensor-Hom | `a ⊗ b ↦ (ξ ↦ (-1)^{pq + p(p-1)/2} ξ(a) b)`, `p = |a|`, `q = |b|` |

#![no_std]

extern crate alloc;

pub mod chain;
pub mod complex;
pub mod error;
pub mod graded;
pub mod signatures;
pub mod structured;

pub use error::{Error, ErrorKind, Result};

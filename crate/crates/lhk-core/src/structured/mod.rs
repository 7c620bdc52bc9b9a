//! Symmetric and quadratic structures on chain complexes.
//!
//! A symmetric structure of dimension `n` on `C` is a family `φ_s ∈ (C ⊗ C)_{n+s}`,
//! `0 ≤ s ≤ k`, with
//!
//! `d φ_0 = 0`, `d φ_s = (-1)^n (φ_{s-1} + (-1)^s T φ_{s-1})`,
//!
//! where `T` is the switch. It is the image of `e_s` under an equivariant map
//! `W -> C ⊗ C` of degree `n`. A quadratic structure is a family
//! `ψ_s ∈ (C ⊗ C)_{n-s}` with `d ψ_s = (-1)^{s+1} (ψ_{s+1} + (-1)^{s+1} T ψ_{s+1})`.
//! Poincaré means the slant of `φ_0` (or of `(1 + T) ψ_0`) is a chain equivalence
//! `Σ^n TC -> C`.

pub mod diagonal;
pub mod forms;
pub mod graded;
pub mod product;
pub mod structure;
pub mod w;

pub use diagonal::{closed_form, extend_diagonal, higher_diagonals, relative_symmetric_construction, symmetric_construction, DiagonalModel, DiagonalTerms, HigherDiagonals};
pub use graded::{assembly_isomorphism, assembly_permutation, ball_dim, external_tensor, graded_product, graded_product_over, graded_product_quad, local_duality, over_point, quadratic_over_point, GradedQuadraticStructure, GradedStructure};
pub use forms::{e8, e8_refinement, hyperbolic, inertia, signature, Inertia};
pub use product::{interchange, product_sym_quad, product_sym_sym};
pub use structure::{form_matrix, quadratic_from_form, symmetric_from_form, switch_vec, PoincareVerdict, QuadraticStructure, SymmetricStructure};
pub use w::{w_diagonal, w_resolution, WDiagonal, WTruncation};

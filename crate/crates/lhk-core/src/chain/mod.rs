//! Exact linear algebra over the integers and bounded chain complexes.

pub mod complex;
pub mod elim;
pub mod map;
pub mod matrix;
pub mod tensor;

pub use complex::{ChainComplex, HomologyGroup, HomologyProfile};
pub use elim::{invariant_factors, rank, smith_normal_form, solve, Snf};
pub use map::{solve_signed_bijection, ChainMap, EquivalenceVerdict};
pub use matrix::{sign, Matrix};
pub use tensor::{hom_complex, koszul_c, slant, solve_chain_homotopy, switch_matrix, tensor, tensor_maps, tensor_square_vec, unslant, HomLayout, TensorLayout};

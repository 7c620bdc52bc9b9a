//! Chain complexes graded over the cells of a ball complex.

pub mod complex;
pub mod dissected;
pub mod duality;
pub mod functor;

pub use complex::{random_unimodular, GradedComplex, GradedMorphism, Variance};
pub use dissected::{dissected_cosubdivision, dissected_subdivision};
pub use duality::{chain_dual, counit, counit_sign, dual_morphism, local_equivalence_check, naive_dual, provenance, redistribution, switch, switch_entrywise, LocalCheck, Redistribution};
pub use functor::{embed_i, graded_tensor, interval_functor, label_map, shift, FunctorOverX, FunctorVariance, IntervalKind};

//! Ball complexes, derived subdivisions and dual cells.

pub mod ball;
pub mod corpus;
pub mod subdivision;

pub use ball::{BallComplex, Cell, ComplexPair, RawCell};
pub use subdivision::{DerivedSubdivision, DualCell, Simplex, SimplicialComplex};

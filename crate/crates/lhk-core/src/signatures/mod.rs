//! Fundamental classes, dissected symmetric signatures, and the product and
//! suspension checks.

pub mod dissected;
pub mod manifold;
pub mod product;
pub mod suspension;

pub use dissected::{dissected_signature, dissected_signature_with, local_classes, relative_dissected_signature, DissectedSignature};
pub use manifold::{fundamental_class, ManifoldComplex, Promise};
pub use product::{alexander_whitney, check_product_formula, factor_cells, product_class, ProductBallRecord, ProductCheck};
pub use suspension::{disk_signature, suspension_product, suspension_product_quad, Suspension};

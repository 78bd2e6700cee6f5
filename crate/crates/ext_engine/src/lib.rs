//! Ext over the finite subalgebras A(n) of the mod 2 Steenrod algebra, by
//! minimal free resolution.

pub mod algebra;
pub mod error;
pub mod gf2;
pub mod products;
pub mod resolution;

pub use algebra::{milnor_product, BasisElement, GradedAlgebra};
pub use error::{ExtError, Result};
pub use products::{class_names, export_chart, ext_product, product, ExtClass};
pub use resolution::{minimal_resolution, minimal_resolution_with_budget, Resolution, ResolutionStage};

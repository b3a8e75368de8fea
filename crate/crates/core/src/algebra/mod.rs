//! Inverse semigroups: validated Cayley tables, the symbolic bicyclic
//! monoid, derived structure and generators.

mod bicyclic;
pub mod generate;
mod relation;
mod table;

pub use bicyclic::{BiElem, BicyclicCarrier, DEFAULT_BOUND, DEFAULT_SAMPLES};
pub use generate::{Family, Generated};
pub use relation::Relation;
pub use table::{validate_table, FiniteInverseSemigroup, MAX_ELEMENTS};

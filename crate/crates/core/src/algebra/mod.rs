//! Noncommutative polynomials over [`Scalar`](crate::scalar::Scalar) and the
//! table-driven normal-ordering engine.

mod element;
mod generator;
mod monomial;
mod rewrite;
mod table;

pub use element::Element;
pub use generator::Generator;
pub use monomial::Monomial;
pub use rewrite::{classical_limit, commutator, multiply, normalize, REWRITE_LIMIT};
pub use table::{RelationTable, RelationTableBuilder, TableKind};

#[cfg(test)]
mod tests;

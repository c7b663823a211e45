//! κ-deformed phase spaces built as cross products of the κ-Poincaré
//! translation algebra with its dual κ-Minkowski space.
//!
//! Layers, bottom up:
//! - [`scalar`], [`algebra`]: exact coefficients, words, normal ordering;
//! - [`hopf`]: coproducts, counit, antipode, pairing and actions;
//! - [`smash`]: derivation of the phase-space relation tables;
//! - [`represent`]: grid operators and uncertainty checks;
//! - [`syntax`], [`cli`]: expression parser/printer and the `kappa` driver.

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod config;
pub mod error;
pub mod hopf;
pub mod represent;
pub mod scalar;
pub mod smash;
pub mod syntax;

pub use algebra::{commutator, multiply, normalize, Element, Generator, Monomial, RelationTable, TableKind};
pub use config::{Basis, CoproductVariant, MetricSign, Order, SmashConfig};
pub use error::{Error, Result};
pub use scalar::Scalar;

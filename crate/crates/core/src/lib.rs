//! Contingency logic under neighborhood semantics.
//!
//! The crate parses formulas of the language with the noncontingency
//! operator `Δ`, evaluates them on finite neighborhood models, checks
//! Hilbert-style derivations in the eight systems from `E` to `K`, searches
//! for countermodels over frame classes and compares the two λ functions
//! used in canonical-model constructions on bounded universes.

pub mod formula;
pub mod lambda;
pub mod model;
pub mod proofs;
pub mod search;
pub mod semantics;

pub use formula::{parse, Formula, FormulaError, Mode};
pub use model::{FrameClassSpec, Neighborhood, NeighborhoodModel, Property, StateSet};

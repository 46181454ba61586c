//! satkit-core: syntactic congruences and saturation operators on finite
//! algebras, finite categories and DFA-derived monoids.
//!
//! The library is organized around a small set of value types:
//!
//! * [`algebra::FiniteAlgebra`] — a carrier `{0..n-1}` with total
//!   operation tables and named constants;
//! * [`partition::Partition`] — an equivalence relation in canonical
//!   block form, used for congruences, kernel pairs and everything the
//!   saturation engine produces;
//! * [`algebra::SubUniverse`] — a subset closed under all operations,
//!   playing the role of a monomorphism into the algebra;
//! * [`catfib::FiniteCategory`] — a finite category presented by a
//!   composition table, for the category-fiber constructions;
//! * [`lang::Dfa`] — deterministic automata, the classical source of
//!   syntactic monoids.
//!
//! The computational core is [`saturation::largest_congruence_below`]
//! (Moore-style refinement to the largest congruence inside a partition)
//! together with the brute-force enumeration
//! [`congruence::all_congruences`], which acts as the oracle against
//! which every "largest" construction can be replayed.

pub mod algebra;
pub mod catfib;
pub mod centralizer;
pub mod congruence;
pub mod corpus;
pub mod error;
pub mod lang;
pub mod partition;
pub mod saturation;
pub mod varieties;

pub use algebra::{parse_algebra, FiniteAlgebra, Homomorphism, SubUniverse};
pub use error::{Error, Result};
pub use partition::Partition;

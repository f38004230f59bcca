//! Finite posets and lattices, the downset and ideal monads on them, and
//! exhaustive verification of the algebra/coalgebra towers, idempotent
//! approximations, representation round-trips and projectivity criteria
//! those monads generate.
//!
//! Everything is desk-scale and deterministic: carriers are immutable once
//! validated, every operation is a pure function, subsets are enumerated in
//! a fixed canonical order, and every "first found" witness refers to that
//! order.

// Quantifier scans over square tables read better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod below;
pub mod bitset;
pub mod corpus;
pub mod error;
pub mod fakir;
pub mod hom;
pub mod iso;
pub mod lattice;
pub mod monad;
pub mod poset;
pub mod projective;
pub mod search;
pub mod stone;
pub mod tower;

pub use bitset::Bitset;
pub use error::{HomError, MonadError, OrderError, TowerError};
pub use hom::{CategoryTag, Equation, Hom};
pub use lattice::{BoundedLattice, Carrier, CarrierRc, MeetSemilattice};
pub use monad::{Assemblies, Budget, Monad, MonadAssembly};
pub use poset::FinitePoset;

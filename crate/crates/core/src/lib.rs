//! Emergent subsystem structure of finite reversible global process theories.
//!
//! A global theory is a centreless permutation group acting transitively on a
//! finite set of global states. From it this crate derives the lattice of
//! self-bicommutant subgroups, local states by restriction, systems and their
//! partial tensor product, and the pure and full process theories built on
//! them, together with checkers for the laws these structures satisfy.

pub mod error;
pub mod group;
pub mod lattice;
pub mod models;
pub mod perm;
pub mod pmcat;
pub mod process;
pub mod quantum;
pub mod states;
pub mod suites;
pub mod systems;
pub mod theory;

pub use error::{Error, Result, TheoryDefect};
pub use group::{FiniteGroup, Limits, OrbitPartition, Subgroup};
pub use lattice::SbcLattice;
pub use perm::Permutation;
pub use states::{LocalState, PurityVerdict};
pub use systems::System;
pub use theory::{validate_global_theory, GlobalTheory};

//! Finite betweenness relations.
//!
//! A ternary relation `(a, b, c)` reads "b lies between a and c". This crate
//! decides the betweenness axioms, builds the closure operators onto the
//! axiom classes, works with the lattice of R-relations on a carrier, moves
//! between lattices and their betweenness, and treats finite R-structures as
//! a Fraïssé class.

pub mod axioms;
pub mod cli;
pub mod closures;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod fraisse;
pub mod gen;
pub mod io;
pub mod orderlat;
pub mod relation;
pub mod report;
pub mod rlattice;
pub mod roads;

pub use error::{Error, Result};
pub use relation::{bottom_relation, interval, top_relation, Carrier, Partition, RelMap, TernaryRelation, Triple};
pub use report::{Axiom, AxiomReport, CheckReport};

#[cfg(test)]
mod cli_tests;
#[cfg(test)]
mod proptests;

//! Nonnesting and noncrossing partitions of the Coxeter families A and B.
//!
//! Nonnesting partitions are modelled as antichains in the root poset
//! ([`roots`]), noncrossing ones as canonically oriented permutations whose
//! cycle diagram has no crossing ([`partitions`]). The [`bijection`] module
//! carries the map between the two worlds together with its inverse and the
//! classical crossing-to-nesting conversion it generalizes; [`enumerate`]
//! sweeps whole systems and checks every claim exhaustively. The [`cli`]
//! module exposes all of it as a command-line tool.

pub mod bijection;
pub mod cli;
pub mod enumerate;
pub mod partitions;
pub mod roots;

//! Declarative triple-graph-pattern transformations compiled to
//! operational triple graph grammar rules.

pub mod analysis;
pub mod deduction;
pub mod engine;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod pattern;
pub mod rulegen;
pub mod triple;

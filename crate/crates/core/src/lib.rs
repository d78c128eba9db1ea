//! Executable combinatorics for Shephard groups: finiteness classification,
//! coset enumeration, Milnor fiber complexes, the fundamental domain `K`,
//! and combinatorial CAT(0)/CAT(1) certificates.

pub mod cccc;
pub mod classify;
pub mod cli;
pub mod complexes;
pub mod davis;
pub mod diagram;
pub mod forms;
pub mod groups;
pub mod milnor;
pub mod polytopes;
pub mod report;

pub use diagram::{parse_diagram, ExtendedCoxeterDiagram, GeneratorSubset, Label};

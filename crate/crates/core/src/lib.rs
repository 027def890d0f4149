//! Finite integral residuated lattices: gluing constructions, rotations,
//! GL2 chains and amalgamation search.

pub mod algebra;
pub mod amalgam;
pub mod cli;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod filters;
pub mod gl2;
pub mod gluing;
pub mod partial;
pub mod quadruple;
pub mod rotations;
pub mod set;
pub mod terms;
pub mod varieties;

pub use algebra::{verify_axioms, FiniteRL, Op};
pub use error::{Error, Result};
pub use set::ElemSet;

use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    /// `line` is 1-based; 0 means the error is not tied to a line.
    #[error("parse error{}: {message}", at_line(*.line))]
    Parse { line: usize, message: String },
    #[error("not residuated: no maximum for {op} at ({x}, {y})")]
    NotResiduated {
        op: &'static str,
        x: usize,
        y: usize,
    },
    #[error("not a congruence filter: {0}")]
    NotCongruenceFilter(String),
    #[error("not a lattice ideal: {0}")]
    NotIdeal(String),
    #[error("not a shared subalgebra: {0}")]
    NotSharedSubalgebra(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not 1-summable: {0}")]
    NotOneSummable(String),
    #[error("invalid nucleus: {0}")]
    InvalidNucleus(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("not a GL2 chain: {0}")]
    NotGl2(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

fn at_line(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!(" at line {line}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;

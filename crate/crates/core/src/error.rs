use std::fmt;

use thiserror::Error;

/// One schema violation located by a JSON pointer into the input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaViolation {
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for SchemaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{at}: {}", self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not skew-symmetric: {0}")]
    NotSkew(String),
    #[error("skew-symmetric matrix has odd order {0}")]
    OddOrder(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("bad index subset: {0}")]
    BadSubset(String),
    #[error("rank mismatch: expected rank {expected} (= 2c + r), form has rank {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("points do not span a line (P and Q are proportional)")]
    DegenerateLine,
    #[error("cohomology computation needs n >= 3, got n = {0}")]
    PreconditionN(usize),
    #[error("moduli dimension formula needs c >= 3 and n >= 3, got c = {c}, n = {n}")]
    HypothesisViolation { c: usize, n: usize },
    #[error("schema error: {}", join(.0))]
    Schema(Vec<SchemaViolation>),
    #[error("generation exhausted after {attempts} attempts")]
    GenerationExhausted { attempts: usize },
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

fn join(v: &[SchemaViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph6: {0}")]
    Graph6(String),
}

/// A violated operation precondition. Carries a human-readable account of
/// which inequality failed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("precondition violated: {0}")]
pub struct Precondition(pub String);

impl Precondition {
    pub fn new(msg: impl Into<String>) -> Self {
        Precondition(msg.into())
    }
}

/// Failure of a Hall-type matching, with the deficient set as certificate:
/// `deficient` has fewer than `deficient.len()` neighbors in total.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HallError {
    #[error("{0}")]
    Precondition(#[from] Precondition),
    #[error("Hall condition fails at stage {stage}: set {deficient:?} has only {neighborhood} neighbors")]
    Deficient { stage: u8, deficient: Vec<Vertex>, neighborhood: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiracError {
    #[error("{0}")]
    Precondition(#[from] Precondition),
}

/// Errors raised by the extremal-case engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtremalError {
    #[error("{0}")]
    Precondition(#[from] Precondition),
    #[error(transparent)]
    Hall(HallError),
    #[error("good-pair graph fails the Dirac condition: min degree {min_degree} with {m} triangles")]
    Dirac { min_degree: usize, m: usize },
    #[error("greedy repair failed for bad vertex {vertex} at stage {stage}")]
    Repair { vertex: Vertex, stage: &'static str },
    #[error("internal: emitted witness failed verification ({0})")]
    Verification(String),
}

impl From<HallError> for ExtremalError {
    fn from(e: HallError) -> Self {
        match e {
            HallError::Precondition(p) => ExtremalError::Precondition(p),
            other => ExtremalError::Hall(other),
        }
    }
}

impl From<DiracError> for ExtremalError {
    fn from(e: DiracError) -> Self {
        match e {
            DiracError::Precondition(p) => ExtremalError::Precondition(p),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0}")]
    Precondition(#[from] Precondition),
}

//! The non-extremal engine: cover most of the graph by complete tripartite
//! blocks, link consecutive blocks by short square paths, absorb the
//! leftover vertices, and wind everything into one square cycle.

pub mod assemble;
pub mod connect;
pub mod cover;
pub mod facts;
pub mod insert;
pub mod k3;

use serde::Serialize;
use thiserror::Error;

pub use assemble::{assemble, NonExtremalStats, NonExtremalWitness};
pub use connect::{connect_cover, connect_edges, four_or_five, ConnectedCover, Connector, FourOrFive};
pub use cover::{build_cover, Cover, CoverDiagnostic};
pub use insert::{insert_leftovers, InsertionState};

use crate::error::{ExtremalError, Precondition};
use crate::graph::Vertex;
use crate::ratio_serde::format_ratio;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// One side-by-side evaluation of an inequality on concrete sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub name: String,
    #[serde(with = "crate::ratio_serde")]
    pub lhs: Rational,
    pub relation: Relation,
    #[serde(with = "crate::ratio_serde")]
    pub rhs: Rational,
    pub holds: bool,
}

impl Inequality {
    pub fn new(name: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let holds = match relation {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        };
        Inequality { name: name.into(), lhs, relation, rhs, holds }
    }
}

impl std::fmt::Display for Inequality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rel = match self.relation {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        };
        write!(
            f,
            "{}: {} {rel} {} ({})",
            self.name,
            format_ratio(&self.lhs),
            format_ratio(&self.rhs),
            if self.holds { "holds" } else { "fails" }
        )
    }
}

#[derive(Debug, Error, Clone)]
pub enum NonExtremalError {
    #[error("{0}")]
    Precondition(#[from] Precondition),
    #[error("cover stalled at round {} with {} uncovered (next class size {})", .0.round, .0.uncovered, .0.next_t)]
    CoverStalled(Box<CoverDiagnostic>),
    #[error("connecting hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("no connector found{}; deepest case reached: {deepest}", pair.map(|(a, b)| format!(" between blocks {a} and {b}")).unwrap_or_default())]
    ConnectorExhausted { pair: Option<(usize, usize)>, deepest: &'static str },
    #[error("rebalancing block {block} underflows: {detail}")]
    Rebalance { block: usize, detail: String },
    #[error("cannot insert vertex {vertex}: {}", trace.join("; "))]
    Insertion { vertex: Vertex, trace: Vec<String> },
    #[error("block {block} does not close into a square path: {source}")]
    Block { block: usize, source: ExtremalError },
    #[error("internal: emitted witness failed verification ({0})")]
    Verification(String),
}

impl NonExtremalError {
    /// Pipeline stage the failure belongs to.
    pub fn stage(&self) -> &'static str {
        match self {
            NonExtremalError::Precondition(_) => "precondition",
            NonExtremalError::CoverStalled(_) => "cover",
            NonExtremalError::Hypothesis(_) | NonExtremalError::ConnectorExhausted { .. } => "connect",
            NonExtremalError::Rebalance { .. } => "connect",
            NonExtremalError::Insertion { .. } => "insert",
            NonExtremalError::Block { .. } | NonExtremalError::Verification(_) => "assemble",
        }
    }
}

//! Two counting facts: large Ore-degree forces many edges, and a dense
//! bipartite graph has many high-degree vertices on each side.

use serde::Serialize;

use crate::error::Precondition;
use crate::graph::{Graph, VertexSet};
use crate::measures::{density, ore_degree};
use crate::params::int;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Implication {
    /// `δ₂` is undefined (complete graph).
    Vacuous,
    /// `δ₂ < 2dn`, nothing to check.
    HypothesisFails,
    Holds,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OreEdges {
    pub status: Implication,
    pub ore_degree: Option<usize>,
    #[serde(with = "crate::ratio_serde")]
    pub hypothesis_bound: Rational,
    pub edges: usize,
    #[serde(with = "crate::ratio_serde")]
    pub edge_bound: Rational,
}

/// Evaluates `δ₂(G) ≥ 2dn ⇒ e(G) ≥ dn²/2` exactly.
pub fn ore_edges_check(g: &Graph, d: Rational) -> Result<OreEdges, Precondition> {
    let n = g.n();
    if n < 2 {
        return Err(Precondition::new("need at least two vertices"));
    }
    let hypothesis_bound = Rational::from_integer(2) * d * int(n);
    let edge_bound = d * int(n * n) / Rational::from_integer(2);
    let d2 = ore_degree(g);
    let edges = g.edge_count();
    let status = match d2 {
        None => Implication::Vacuous,
        Some(x) if int(x) < hypothesis_bound => Implication::HypothesisFails,
        Some(_) if int(edges) >= edge_bound => Implication::Holds,
        Some(_) => Implication::Violated,
    };
    Ok(OreEdges { status, ore_degree: d2, hypothesis_bound, edges, edge_bound })
}

/// `B₁ = {v ∈ B : deg(v, A) ≥ (d+γ)|A|}` under `d(A,B) ≥ d + 2γ`.
pub fn dense_subset(g: &Graph, a: &VertexSet, b: &VertexSet, d: Rational, gamma: Rational) -> Result<VertexSet, Precondition> {
    let dens = density(g, a, b)?;
    if dens < d + Rational::from_integer(2) * gamma {
        return Err(Precondition::new(format!("d(A,B) = {dens} is below {d} + 2·{gamma}")));
    }
    let b1 = high_degree_part(g, a, b, d + gamma);
    assert!(
        int(b1.len()) >= gamma * int(b.len()),
        "counting bound violated: |B1| = {} < {gamma}·{}",
        b1.len(),
        b.len()
    );
    Ok(b1)
}

/// Vertices of `b` with at least `ratio·|a|` neighbours in `a`.
pub(crate) fn high_degree_part(g: &Graph, a: &VertexSet, b: &VertexSet, ratio: Rational) -> VertexSet {
    let need = ratio * int(a.len());
    let mut out = g.empty_set();
    for v in b.iter() {
        if int(g.degree_into(v, a)) >= need {
            out.insert(v);
        }
    }
    out
}

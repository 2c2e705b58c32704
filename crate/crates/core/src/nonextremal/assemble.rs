//! The whole non-extremal pipeline, from graph to verified square cycle.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::connect::{connect_cover, ConnectedCover};
use super::cover::{build_cover, Cover};
use super::insert::{insert_leftovers, InsertionState};
use super::{Inequality, NonExtremalError};
use crate::error::{ExtremalError, Precondition};
use crate::extremal::cover::triangle_cover_by_matching;
use crate::extremal::{square_ham_from_cover, Segment};
use crate::extremal_detect::{classify, Condition};
use crate::graph::{Graph, Vertex};
use crate::measures::{ore_degree, ore_threshold};
use crate::params::int;
use crate::verify::square_cycle_violation;
use crate::Parameters;

#[derive(Debug, Clone, Serialize)]
pub struct NonExtremalStats {
    pub n: usize,
    pub s: usize,
    pub m: usize,
    pub rounds: u32,
    /// Vertices in blocks after covering.
    pub coverage: usize,
    pub uncovered_after_cover: usize,
    #[serde(rename = "max_Q")]
    pub max_q: usize,
    /// Connector vertices.
    pub forbidden: usize,
    pub leftovers: usize,
    pub kicked: usize,
    pub max_triangles: usize,
    pub diagnostics: Vec<Inequality>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonExtremalWitness {
    pub cycle: Vec<Vertex>,
    pub stats: NonExtremalStats,
    #[serde(skip)]
    pub cover: Cover,
    #[serde(skip)]
    pub connected: ConnectedCover,
    #[serde(skip)]
    pub insertion: InsertionState,
    /// Wall time per stage, in pipeline order. Kept out of the serialized
    /// witness so that witnesses stay byte-identical across runs.
    #[serde(skip)]
    pub timings: Vec<(&'static str, Duration)>,
}

/// Cover, connect, insert, then wind each block from the end of the
/// incoming connector to the start of the outgoing one. The cycle is
/// verified against `g` before it is returned.
pub fn assemble(g: &Graph, params: &Parameters) -> Result<NonExtremalWitness, NonExtremalError> {
    let n = g.n();
    params.validate()?;
    if n < 6 {
        return Err(Precondition::new("a square cycle through blocks needs at least six vertices").into());
    }
    if let Some(d2) = ore_degree(g) {
        let need = ore_threshold(n, params.eps, 2);
        if int(d2) < need {
            return Err(Precondition::new(format!("δ₂ = {d2} is below (4/3 − 2ε)n = {need}")).into());
        }
    }
    let mut warnings = Vec::new();
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut Vec<(&'static str, Duration)>| {
        timings.push((name, clock.elapsed()));
        clock = Instant::now();
    };
    let report = classify(g, params.alpha, None, params.seed, params.restarts)?;
    if report.condition != Condition::NonExtremal {
        return Err(Precondition::new(format!("graph is extremal ({:?})", report.condition)).into());
    }
    if !report.certified {
        warnings.push("non-extremality is heuristic".to_string());
    }
    if !params.hierarchy_ok() {
        warnings.push("ε ≤ η³ ≤ α⁹ does not hold for these parameters".to_string());
    }

    lap("classify", &mut timings);

    let cover = build_cover(g, params)?;
    debug_assert_eq!(cover.check(g), Ok(()));
    lap("cover", &mut timings);
    let cc = connect_cover(g, &cover, params)?;
    if let Err(e) = cc.check(g) {
        return Err(NonExtremalError::Verification(format!("connected cover: {e}")));
    }
    lap("connect", &mut timings);
    let (rest, ins) = insert_leftovers(g, &cc, params)?;
    lap("insert", &mut timings);

    let m = cc.blocks.len();
    let mut cycle = Vec::with_capacity(n);
    for i in 0..m {
        let start: Segment = cc.connectors[(i + m - 1) % m].v().into();
        let end: Segment = cc.connectors[i].u().into();
        let mut pieces = vec![start];
        pieces.extend(ins.segments(i));
        if !rest[i].is_empty() {
            let tc = triangle_cover_by_matching(g, &rest[i].parts)
                .map_err(|e| NonExtremalError::Block { block: i, source: ExtremalError::from(e) })?;
            pieces.extend(tc.triangles.iter().map(|&t| Segment::from(t)));
        }
        pieces.push(end);
        let last = pieces.len() - 1;
        let path = square_ham_from_cover(g, &pieces, Some((0, last))).map_err(|source| NonExtremalError::Block { block: i, source })?;
        cycle.extend(path);
        cycle.extend_from_slice(cc.connectors[i].q());
    }
    if cycle.len() != n {
        return Err(NonExtremalError::Verification(format!("cycle has {} of {n} vertices", cycle.len())));
    }
    if let Some(v) = square_cycle_violation(g, &cycle)? {
        return Err(NonExtremalError::Verification(format!("{v:?}")));
    }
    lap("assemble", &mut timings);
    let stats = NonExtremalStats {
        n,
        s: cover.s,
        m,
        rounds: cover.rounds,
        coverage: cover.coverage(),
        uncovered_after_cover: cover.uncovered.len(),
        max_q: cc.max_q(),
        forbidden: cc.forbidden.len(),
        leftovers: cc.uncovered.len(),
        kicked: ins.kicked.len(),
        max_triangles: ins.max_triangles,
        diagnostics: cc.diagnostics.clone(),
        warnings,
    };
    Ok(NonExtremalWitness { cycle, stats, cover, connected: cc, insertion: ins, timings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_closes() {
        let g = Graph::complete(60);
        let w = assemble(&g, &Parameters::default()).unwrap();
        assert!(crate::verify_square_cycle(&g, &w.cycle).unwrap().hamiltonian);
        assert_eq!(w.stats.m, 1);
    }

    #[test]
    fn small_graphs_fail_honestly() {
        let g = Graph::complete(30);
        let e = assemble(&g, &Parameters::default()).unwrap_err();
        assert_eq!(e.stage(), "cover", "{e}");
    }
}

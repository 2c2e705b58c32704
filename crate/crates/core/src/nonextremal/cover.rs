//! Covering most of the graph by vertex-disjoint balanced complete
//! tripartite blocks.

use serde::Serialize;

use super::k3::{extend_to_k4, find_k3s};
use super::{Inequality, NonExtremalError, Relation};
use crate::error::Precondition;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::measures::{density, density_within, ore_degree, ore_threshold};
use crate::params::{int, pow};
use crate::verify::Tripartite;
use crate::{Parameters, Rational};

#[derive(Debug, Clone, Serialize)]
pub struct Cover {
    /// Target class size: block classes lie in `[s, 2s]`.
    pub s: usize,
    pub blocks: Vec<Tripartite>,
    pub uncovered: Vec<Vertex>,
    /// Vertices set aside by refinement rounds.
    pub forbidden: Vec<Vertex>,
    pub rounds: u32,
}

impl Cover {
    pub fn coverage(&self) -> usize {
        self.blocks.iter().map(Tripartite::len).sum()
    }

    /// Blocks disjoint, complete, balanced, classes within `[s, 2s]`, and
    /// `coverage + |U| + |forbidden| = n` with all three disjoint.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let mut seen = vec![false; g.n()];
        let mut mark = |v: Vertex, what: &str| -> Result<(), String> {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} repeated or out of range ({what})"));
            }
            Ok(())
        };
        for (i, b) in self.blocks.iter().enumerate() {
            if !b.is_complete_in(g) || !b.is_balanced() {
                return Err(format!("block {i} is not a balanced complete tripartite subgraph"));
            }
            if b.min_class() < self.s || b.max_class() > 2 * self.s {
                return Err(format!("block {i} has class size {} outside [{}, {}]", b.min_class(), self.s, 2 * self.s));
            }
            for v in b.vertices() {
                mark(v, "block")?;
            }
        }
        for &v in &self.uncovered {
            mark(v, "uncovered")?;
        }
        for &v in &self.forbidden {
            mark(v, "forbidden")?;
        }
        if seen.iter().any(|&x| !x) {
            return Err("coverage + |U| + |forbidden| != n".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverDiagnostic {
    pub round: u32,
    pub t: usize,
    pub next_t: usize,
    pub uncovered: usize,
    pub extended_blocks: usize,
    /// The inequalities whose conjunction rules this situation out for
    /// large `n`, evaluated on the actual sets.
    pub inequalities: Vec<Inequality>,
}

/// Greedy extraction of `K₃(t₀)` blocks, followed by refinement rounds
/// while at least `ηn` vertices stay uncovered.
///
/// A refinement round grows blocks into `U` through the 4-partite
/// extension and then cuts every class into pieces of size
/// `t_{i+1} = ⌊η²tᵢ⌋`. Rounds whose next size drops below `min_class`
/// cannot produce usable blocks; the engine then stops with a diagnostic
/// that evaluates the counting inequalities on the stalled state.
pub fn build_cover(g: &Graph, params: &Parameters) -> Result<Cover, NonExtremalError> {
    let n = g.n();
    params.validate()?;
    if let Some(d2) = ore_degree(g) {
        let need = ore_threshold(n, params.eps, 2);
        if int(d2) < need {
            return Err(Precondition::new(format!("δ₂ = {d2} is below (4/3 − 2ε)n = {need}")).into());
        }
    }
    let mut t = params.t0(n);
    let mut blocks: Vec<Tripartite> = Vec::new();
    let mut u = g.vertex_set();
    let mut forbidden = g.empty_set();
    let limit = (Rational::from_integer(1) / pow(params.eta, 4)).to_integer().max(1) as u32;
    let eta_n = params.eta * int(n);
    let mut round = 0;
    loop {
        extract_all(g, t, &mut u, &mut blocks, params.restarts)?;
        if int(u.len()) < eta_n {
            break;
        }
        let next_t = params.next_t(t);
        if round >= limit || next_t < params.min_class.max(1) {
            let diag = stalled_diagnostic(g, params, round, t, next_t, &u, &blocks, &forbidden);
            return Err(NonExtremalError::CoverStalled(Box::new(diag)));
        }
        refine(g, params, next_t, &mut u, &mut blocks, &mut forbidden);
        round += 1;
        t = next_t;
    }
    grow_blocks(g, t, &mut u, &mut blocks);
    let uncovered = u.to_vec();
    let cover = Cover { s: t, blocks, uncovered, forbidden: forbidden.to_vec(), rounds: round };
    debug_assert!(cover.check(g).is_ok());
    Ok(cover)
}

fn extract_all(g: &Graph, t: usize, u: &mut VertexSet, blocks: &mut Vec<Tripartite>, restarts: usize) -> Result<(), NonExtremalError> {
    loop {
        match find_k3s(g, t, u, restarts)?.block {
            Some(b) => {
                for v in b.vertices() {
                    u.remove(v);
                }
                blocks.push(b);
            }
            None => return Ok(()),
        }
    }
}

/// Adds triangles of `U` to blocks while some triangle extends a block
/// to a larger complete tripartite graph with classes below `2s`.
fn grow_blocks(g: &Graph, s: usize, u: &mut VertexSet, blocks: &mut [Tripartite]) {
    for b in blocks.iter_mut() {
        while b.min_class() < 2 * s {
            let sets: Vec<VertexSet> = b.parts.iter().map(|p| g.set_of(p.iter().copied())).collect();
            let fits = |h: usize| -> VertexSet {
                let mut c = u.clone();
                for (k, set) in sets.iter().enumerate() {
                    if k != h {
                        c = g.set_of(c.iter().filter(|&v| set.is_subset(g.neighbor_set(v))));
                    }
                }
                c
            };
            let c: Vec<VertexSet> = (0..3).map(fits).collect();
            let mut hit = None;
            'search: for a in c[0].iter() {
                for bb in g.neighbor_set(a).intersection(&c[1]).iter() {
                    let mut z = g.neighbor_set(a).intersection(g.neighbor_set(bb));
                    z.intersect_with(&c[2]);
                    if let Some(x) = z.first() {
                        hit = Some([a, bb, x]);
                        break 'search;
                    }
                }
            }
            let Some(tri) = hit else { break };
            let mut parts = b.parts.clone();
            for (h, &v) in tri.iter().enumerate() {
                parts[h].push(v);
                u.remove(v);
            }
            *b = Tripartite::new(parts);
        }
    }
}

/// One refinement round. Returns the number of blocks that were extended.
fn refine(
    g: &Graph,
    params: &Parameters,
    next_t: usize,
    u: &mut VertexSet,
    blocks: &mut Vec<Tripartite>,
    forbidden: &mut VertexSet,
) -> usize {
    let eta2 = params.eta * params.eta;
    let bar = Rational::new(2, 3) + Rational::from_integer(6) * eta2;
    let gamma = Rational::from_integer(3) * eta2;
    let mut out = Vec::new();
    let mut extended = 0;
    for b in blocks.drain(..) {
        let kv = g.set_of(b.vertices());
        let dense = !u.is_empty() && density(g, u, &kv).is_ok_and(|d| d >= bar);
        if dense {
            if let Ok(ext) = extend_to_k4(g, &b, u, gamma, false) {
                if let Some(four) = ext.k4.split() {
                    extended += 1;
                    let used = g.set_of(ext.k4.parts.iter().flatten().copied());
                    for v in ext.k4.parts[3].iter() {
                        u.remove(*v);
                    }
                    let rest = Tripartite::new(b.parts.clone().map(|p| p.into_iter().filter(|v| !used.contains(*v)).collect()));
                    out.extend(four);
                    let keep = rest.min_class();
                    let trimmed = Tripartite::new(rest.parts.map(|p| {
                        for &v in &p[keep..] {
                            forbidden.insert(v);
                        }
                        p[..keep].to_vec()
                    }));
                    out.push(trimmed);
                    continue;
                }
            }
        }
        out.push(b);
    }
    for b in out {
        let pieces = cut_block(&b, next_t);
        // Vertices beyond a multiple of the new size return to U.
        let kept = g.set_of(pieces.iter().flat_map(|x| x.vertices().collect::<Vec<_>>()));
        for v in b.vertices().filter(|&v| !kept.contains(v)) {
            u.insert(v);
        }
        blocks.extend(pieces);
    }
    extended
}

/// Cuts a balanced block into blocks with classes of size in `[t, 2t)`.
/// A block smaller than `t` is dissolved.
fn cut_block(b: &Tripartite, t: usize) -> Vec<Tripartite> {
    let size = b.min_class();
    if t == 0 || size < t {
        return Vec::new();
    }
    let q = size / t;
    let mut out = Vec::with_capacity(q);
    let mut start = 0;
    for i in 0..q {
        let len = size / q + usize::from(i < size % q);
        out.push(Tripartite::new(b.parts.clone().map(|p| p[start..start + len].to_vec())));
        start += len;
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn stalled_diagnostic(
    g: &Graph,
    params: &Parameters,
    round: u32,
    t: usize,
    next_t: usize,
    u: &VertexSet,
    blocks: &[Tripartite],
    forbidden: &VertexSet,
) -> CoverDiagnostic {
    let n = int(g.n());
    let eta2 = params.eta * params.eta;
    let covered = g.set_of(blocks.iter().flat_map(|b| b.vertices().collect::<Vec<_>>()));
    let mut outside = covered.clone();
    outside.union_with(forbidden);
    let uu = int(u.len());
    let vt = int(covered.len());
    let mut inequalities = Vec::new();
    if let Ok(d) = density_within(g, u) {
        inequalities.push(Inequality::new("d(U) < 1/2 + η²", d, Relation::Lt, Rational::new(1, 2) + eta2));
    }
    let e_out = int(g.edges_between(u, &outside));
    let upper = (Rational::new(2, 3) * vt + Rational::from_integer(8) * eta2 * n) * uu;
    inequalities.push(Inequality::new("e(U, V(T) ∪ Z) ≤ (2/3|V(T)| + 8η²n)|U|", e_out, Relation::Le, upper));
    let lower = (Rational::new(2, 3) * vt + params.eta * n / Rational::from_integer(6)
        - Rational::from_integer(2) * params.eps * n
        - eta2 * uu)
        * uu;
    inequalities.push(Inequality::new("e(U, V(T) ∪ Z) ≥ (2/3|V(T)| + ηn/6 − 2εn − η²|U|)|U|", e_out, Relation::Ge, lower));
    let extended_blocks = blocks
        .iter()
        .filter(|b| {
            let kv = g.set_of(b.vertices());
            !u.is_empty() && density(g, u, &kv).is_ok_and(|d| d >= Rational::new(2, 3) + Rational::from_integer(6) * eta2)
        })
        .count();
    CoverDiagnostic { round, t, next_t, uncovered: u.len(), extended_blocks, inequalities }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_covered_completely() {
        let g = Graph::complete(60);
        let c = build_cover(&g, &Parameters::default()).unwrap();
        assert_eq!(c.check(&g), Ok(()));
        assert!(c.uncovered.is_empty());
        assert_eq!(c.coverage(), 60);
        assert_eq!(c.blocks[0].min_class(), 20);
    }

    #[test]
    fn low_ore_degree_is_rejected() {
        let g = Graph::complete_multipartite(&[10, 10]);
        assert!(matches!(build_cover(&g, &Parameters::default()), Err(NonExtremalError::Precondition(_))));
    }

    #[test]
    fn oversized_blocks_stall_with_diagnostic() {
        let g = Graph::complete(60);
        let p = Parameters { class_size: Some(25), ..Parameters::default() };
        match build_cover(&g, &p) {
            Err(NonExtremalError::CoverStalled(d)) => {
                assert_eq!((d.t, d.next_t, d.uncovered), (25, 0, 60));
                assert!(!d.inequalities.is_empty());
            }
            other => panic!("expected a stall, got {other:?}"),
        }
    }

    #[test]
    fn cutting_keeps_classes_in_range() {
        let b = Tripartite::new([(0..45).collect(), (45..90).collect(), (90..135).collect()]);
        let pieces = cut_block(&b, 10);
        assert_eq!(pieces.len(), 4);
        assert!(pieces.iter().all(|p| p.is_balanced() && (10..20).contains(&p.min_class())));
        assert_eq!(pieces.iter().map(Tripartite::len).sum::<usize>(), 135);
        assert!(cut_block(&b, 50).is_empty());
    }
}

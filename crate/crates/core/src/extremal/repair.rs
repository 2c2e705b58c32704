//! Absorbing low-degree ("bad") vertices into exceptional 9-vertex
//! segments `a₁a₂a₃ b₁b₂b₃ c₁c₂c₃`, so that the rest of the tripartite graph
//! is nearly complete and the segments behave like triangles.

use serde::Serialize;

use super::cover::{check_parts, Parts, Segment};
use crate::error::{ExtremalError, Precondition};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::params::int;
use crate::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct Repair {
    /// One 9-vertex segment per bad vertex, bad vertex in the middle triple.
    pub segments: Vec<Segment>,
    /// The classes with every segment vertex removed.
    pub reduced: Parts,
    pub bad: Vec<Vertex>,
    /// Smallest `|N(aᵢ) ∩ N(cᵢ) ∩ Aⱼ|` over segments, `i ≠ j`: the degree an
    /// exceptional triangle inherits.
    pub exceptional_degree: Option<usize>,
}

/// Vertices with fewer than `(1−α′)m` neighbours in some other class,
/// ascending.
pub fn bad_vertices(h: &Graph, parts: &Parts, alpha_prime: Rational) -> Vec<Vertex> {
    let m = parts[0].len();
    let need = (Rational::from_integer(1) - alpha_prime) * int(m);
    let sets: Vec<VertexSet> = parts.iter().map(|p| h.set_of(p.iter().copied())).collect();
    let mut out = Vec::new();
    for i in 0..3 {
        for &v in &parts[i] {
            if (0..3).any(|j| j != i && int(h.degree_into(v, &sets[j])) < need) {
                out.push(v);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Node cap for the per-vertex search; first-fit almost always succeeds
/// without backtracking, the cap only bounds pathological inputs.
const REPAIR_NODES: usize = 200_000;

pub fn repair_bad_vertices(
    h: &Graph,
    parts: &Parts,
    alpha_prime: Rational,
    beta: Rational,
    gamma: Rational,
) -> Result<Repair, ExtremalError> {
    let m = check_parts(h, parts)?;
    let sets: Vec<VertexSet> = parts.iter().map(|p| h.set_of(p.iter().copied())).collect();
    let class_of = |v: Vertex| (0..3).find(|&i| sets[i].contains(v)).expect("vertex in a class");
    let bad = bad_vertices(h, parts, alpha_prime);
    let cap = Rational::from_integer(2) * beta * int(m);
    for (i, s) in sets.iter().enumerate() {
        let k = bad.iter().filter(|&&v| s.contains(v)).count();
        if int(k) > cap {
            return Err(Precondition::new(format!("class {} has {k} bad vertices, more than 2·{beta}·{m}", i + 1)).into());
        }
    }
    let floor = gamma * int(m);
    let low = super::cover::cross_min_degree(h, parts);
    if int(low) < floor {
        return Err(Precondition::new(format!("cross min degree {low} is below {gamma}·{m}")).into());
    }

    let mut free = [sets[0].clone(), sets[1].clone(), sets[2].clone()];
    let bad_set = h.set_of(bad.iter().copied());
    for f in free.iter_mut() {
        f.difference_with(&bad_set);
    }
    let mut segments = Vec::new();
    for &u in &bad {
        let ci = class_of(u);
        let seq = fill_segment(h, u, ci, &free).ok_or(ExtremalError::Repair { vertex: u, stage: "segment search" })?;
        for &v in &seq {
            free[class_of(v)].remove(v);
        }
        segments.push(Segment(seq));
    }
    let mut exceptional_degree: Option<usize> = None;
    for seg in &segments {
        for i in 0..3 {
            let common = h.neighbor_set(seg.0[i]).intersection(h.neighbor_set(seg.0[6 + i]));
            for (j, set) in sets.iter().enumerate() {
                if j != i {
                    let d = common.intersection_len(set);
                    exceptional_degree = Some(exceptional_degree.map_or(d, |e| e.min(d)));
                }
            }
        }
    }
    let used: VertexSet = h.set_of(segments.iter().flat_map(|s| s.0.iter().copied()));
    let reduced = [0, 1, 2].map(|i| parts[i].iter().copied().filter(|&v| !used.contains(v)).collect());
    Ok(Repair { segments, reduced, bad, exceptional_degree })
}

/// Places `u` at position `3 + ci` and fills the other eight positions
/// with free typical vertices of the matching class, every pair at
/// distance one or two adjacent. Positions nearest to `u` go first; each
/// takes the lowest-id candidate, with backtracking.
fn fill_segment(h: &Graph, u: Vertex, ci: usize, free: &[VertexSet; 3]) -> Option<Vec<Vertex>> {
    let centre = 3 + ci;
    let mut order: Vec<usize> = (0..9).filter(|&p| p != centre).collect();
    order.sort_by_key(|&p| (p.abs_diff(centre), p));
    let mut seq = [usize::MAX; 9];
    seq[centre] = u;
    let mut nodes = 0;
    fn go(h: &Graph, order: &[usize], k: usize, seq: &mut [Vertex; 9], free: &[VertexSet; 3], nodes: &mut usize) -> bool {
        if k == order.len() {
            return true;
        }
        *nodes += 1;
        if *nodes > REPAIR_NODES {
            return false;
        }
        let p = order[k];
        let mut cand = free[p % 3].clone();
        for q in p.saturating_sub(2)..(p + 3).min(9) {
            if q != p && seq[q] != usize::MAX {
                cand.intersect_with(h.neighbor_set(seq[q]));
            }
        }
        for v in cand.iter() {
            if seq.contains(&v) {
                continue;
            }
            seq[p] = v;
            if go(h, order, k + 1, seq, free, nodes) {
                return true;
            }
            seq[p] = usize::MAX;
        }
        false
    }
    go(h, &order, 0, &mut seq, free, &mut nodes).then(|| seq.to_vec())
}

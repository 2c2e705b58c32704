//! Extracting complete tripartite blocks: a greedy search with restarts
//! and an exact fallback, and the pigeonhole extension of a block to a
//! complete 4-partite graph.

use std::collections::BTreeMap;

use serde::Serialize;

use super::facts::{dense_subset, high_degree_part};
use crate::error::Precondition;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::measures::density;
use crate::oracles::{exact_k3t, SearchBudget, SearchOutcome};
use crate::params::{ceil_usize, int};
use crate::verify::Tripartite;
use crate::Rational;

/// Slack beyond which the greedy stops preferring a candidate for its slack
/// and prefers the one with fewer neighbours in the pool instead, so that
/// hard-to-cover vertices are used while there is still room for them.
const SLACK_CAP: i64 = 5;

/// Largest `3s` for which a failed greedy search falls back to the exact
/// oracle.
pub const EXACT_K3_LIMIT: usize = 15;

#[derive(Debug, Clone, Serialize)]
pub struct K3Search {
    pub block: Option<Tripartite>,
    /// True when "none found" is certified by the exact search.
    pub exact: bool,
    pub attempts: usize,
}

/// Searches `G[within]` for a `K₃(s)`.
///
/// The greedy fills the class with the fewest vertices, taking the
/// candidate that keeps the other two candidate sets largest relative to
/// what they still need. Attempt `r` starts from the vertex of `r`-th
/// highest degree inside `within`.
pub fn find_k3s(g: &Graph, s: usize, within: &VertexSet, restarts: usize) -> Result<K3Search, Precondition> {
    if s == 0 {
        return Err(Precondition::new("class size must be positive"));
    }
    if within.len() < 3 * s {
        return Ok(K3Search { block: None, exact: true, attempts: 0 });
    }
    let mut pool_deg = vec![0; g.n()];
    let mut seeds: Vec<(usize, Vertex)> = Vec::with_capacity(within.len());
    for v in within.iter() {
        pool_deg[v] = g.degree_into(v, within);
        seeds.push((pool_deg[v], v));
    }
    seeds.sort_unstable();
    let tries = (restarts + 1).min(seeds.len());
    for (r, &(_, seed)) in seeds.iter().take(tries).enumerate() {
        if let Some(t) = greedy_from(g, s, within, seed, &pool_deg) {
            debug_assert!(t.is_complete_in(g));
            return Ok(K3Search { block: Some(t), exact: false, attempts: r + 1 });
        }
    }
    if let Some(t) = component_packing(g, s, within) {
        debug_assert!(t.is_complete_in(g));
        return Ok(K3Search { block: Some(t), exact: false, attempts: tries + 1 });
    }
    if 3 * s <= EXACT_K3_LIMIT {
        let vs = within.to_vec();
        let sub = g.induced(&vs);
        if let SearchOutcome::Found(t) = exact_k3t(&sub, s, SearchBudget::default()).map_err(|e| Precondition::new(e.to_string()))? {
            let parts = t.parts.map(|p| p.into_iter().map(|i| vs[i]).collect());
            return Ok(K3Search { block: Some(Tripartite::new(parts)), exact: true, attempts: tries + 1 });
        }
        return Ok(K3Search { block: None, exact: true, attempts: tries + 1 });
    }
    Ok(K3Search { block: None, exact: false, attempts: tries })
}

fn greedy_from(g: &Graph, s: usize, within: &VertexSet, seed: Vertex, pool_deg: &[usize]) -> Option<Tripartite> {
    let mut parts: [Vec<Vertex>; 3] = Default::default();
    let mut cand = [within.clone(), within.clone(), within.clone()];
    let place = |c: usize, w: Vertex, parts: &mut [Vec<Vertex>; 3], cand: &mut [VertexSet; 3]| {
        parts[c].push(w);
        for (j, cj) in cand.iter_mut().enumerate() {
            cj.remove(w);
            if j != c {
                cj.intersect_with(g.neighbor_set(w));
            }
        }
    };
    place(0, seed, &mut parts, &mut cand);
    loop {
        let c = (0..3).min_by_key(|&i| (parts[i].len(), i)).unwrap();
        if parts[c].len() == s {
            break;
        }
        let mut best: Option<((i64, i64), Vertex)> = None;
        for w in cand[c].iter() {
            let mut score = i64::MAX;
            for j in 0..3 {
                if j == c {
                    continue;
                }
                let mut have = cand[j].intersection_len(g.neighbor_set(w)) as i64;
                if cand[j].contains(w) {
                    have -= 1;
                }
                score = score.min(have - (s - parts[j].len()) as i64);
            }
            let key = (score.min(SLACK_CAP), -(pool_deg[w] as i64));
            if best.is_none_or(|(b, _)| key > b) {
                best = Some((key, w));
            }
        }
        let ((score, _), w) = best?;
        if score < 0 {
            return None;
        }
        place(c, w, &mut parts, &mut cand);
    }
    Some(Tripartite::new(parts))
}

/// Connected components of the complement of `G[within]`, each sorted,
/// ordered by their smallest vertex.
pub fn complement_components(g: &Graph, within: &VertexSet) -> Vec<Vec<Vertex>> {
    let mut left = within.clone();
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        left.remove(start);
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            let fresh = left.difference(g.neighbor_set(u));
            for v in fresh.iter() {
                left.remove(v);
                comp.push(v);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A set carries a `K₃(s)` exactly when the components of its complement
/// can be grouped into three classes of `s` vertices each. This packs
/// whole components of the complement of `G[within]` (skipping any that do
/// not fit) by dynamic programming over class fill levels.
pub fn component_packing(g: &Graph, s: usize, within: &VertexSet) -> Option<Tripartite> {
    let mut comps: Vec<Vec<Vertex>> = complement_components(g, within).into_iter().filter(|c| c.len() <= s).collect();
    if comps.iter().map(Vec::len).sum::<usize>() < 3 * s {
        return None;
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let side = s + 1;
    let idx = |a: usize, b: usize, c: usize| (a * side + b) * side + c;
    // choice[i][state]: how state was first reached after component i
    // (0 = skipped, 1..=3 = placed in that class, u8::MAX = unreachable).
    let mut reach = vec![false; side * side * side];
    reach[0] = true;
    let mut choice: Vec<Vec<u8>> = Vec::with_capacity(comps.len());
    let goal = idx(s, s, s);
    for comp in &comps {
        let k = comp.len();
        let mut next = reach.clone();
        let mut ch = vec![u8::MAX; reach.len()];
        for (st, &r) in reach.iter().enumerate() {
            if r {
                ch[st] = 0;
            }
        }
        for a in 0..side {
            for b in 0..side {
                for c in 0..side {
                    if !reach[idx(a, b, c)] {
                        continue;
                    }
                    for (cls, (na, nb, nc)) in [(a + k, b, c), (a, b + k, c), (a, b, c + k)].into_iter().enumerate() {
                        if na < side && nb < side && nc < side && !next[idx(na, nb, nc)] {
                            next[idx(na, nb, nc)] = true;
                            ch[idx(na, nb, nc)] = cls as u8 + 1;
                        }
                    }
                }
            }
        }
        reach = next;
        choice.push(ch);
        if reach[goal] {
            break;
        }
    }
    if !reach[goal] {
        return None;
    }
    let mut parts: [Vec<Vertex>; 3] = Default::default();
    let (mut a, mut b, mut c) = (s, s, s);
    for i in (0..choice.len()).rev() {
        let k = comps[i].len();
        match choice[i][idx(a, b, c)] {
            1 => {
                parts[0].extend(&comps[i]);
                a -= k;
            }
            2 => {
                parts[1].extend(&comps[i]);
                b -= k;
            }
            3 => {
                parts[2].extend(&comps[i]);
                c -= k;
            }
            _ => {}
        }
    }
    debug_assert_eq!((a, b, c), (0, 0, 0));
    Some(Tripartite::new(parts))
}

/// A complete 4-partite subgraph with explicit classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourPartite {
    pub parts: [Vec<Vertex>; 4],
}

impl FourPartite {
    pub fn is_complete_in(&self, g: &Graph) -> bool {
        (0..4).all(|i| {
            (i + 1..4).all(|j| self.parts[i].iter().all(|&u| self.parts[j].iter().all(|&v| g.adjacent(u, v))))
        })
    }

    /// Splits `K₄(3k)` into four `K₃(k)`: each class is cut into thirds and
    /// every block takes one third from three different classes. Classes
    /// are truncated to a multiple of three first; `None` when that leaves
    /// nothing.
    pub fn split(&self) -> Option<[Tripartite; 4]> {
        let k = self.parts.iter().map(|p| p.len()).min()? / 3;
        if k == 0 {
            return None;
        }
        let third = |c: usize, i: usize| self.parts[c][i * k..(i + 1) * k].to_vec();
        Some([
            Tripartite::new([third(0, 0), third(1, 0), third(2, 0)]),
            Tripartite::new([third(0, 1), third(1, 1), third(3, 0)]),
            Tripartite::new([third(0, 2), third(2, 1), third(3, 1)]),
            Tripartite::new([third(1, 2), third(2, 2), third(3, 2)]),
        ])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Extension {
    pub k4: FourPartite,
    pub b1: usize,
    pub bucket: usize,
    /// Preconditions that failed but were overridden.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtendError {
    #[error("{0}")]
    Precondition(#[from] Precondition),
    #[error("no neighbourhood class of size {need} meeting every class in {need} vertices (largest usable class: {best})")]
    BucketShortfall { need: usize, best: usize },
}

/// Extends `K = K₃(s)` by vertices of `B` to a `K₄(⌈γs⌉)`.
///
/// Vertices of `B` with at least `(2/3+γ)|V(K)|` neighbours in `K` are
/// grouped by their exact neighbourhood in `V(K)`; a group large enough
/// whose common neighbourhood meets every class in `⌈γs⌉` vertices gives
/// the fourth class. With `strict` unset, the density and size
/// preconditions are reported as warnings instead of errors.
pub fn extend_to_k4(g: &Graph, k: &Tripartite, b: &VertexSet, gamma: Rational, strict: bool) -> Result<Extension, ExtendError> {
    let s = k.min_class();
    if s == 0 || !k.is_complete_in(g) {
        return Err(Precondition::new("K must be a non-empty complete tripartite subgraph").into());
    }
    let kv = g.set_of(k.vertices());
    if !kv.is_disjoint(b) || b.is_empty() {
        return Err(Precondition::new("B must be non-empty and disjoint from K").into());
    }
    let need = ceil_usize(gamma * int(s)).max(1);
    let mut warnings = Vec::new();
    let dens_need = Rational::new(2, 3) + Rational::from_integer(2) * gamma;
    let dens = density(g, b, &kv)?;
    let mut check = |ok: bool, msg: String| -> Result<(), ExtendError> {
        match (ok, strict) {
            (true, _) => Ok(()),
            (false, true) => Err(Precondition::new(msg).into()),
            (false, false) => {
                warnings.push(msg);
                Ok(())
            }
        }
    };
    check(dens >= dens_need, format!("d(B, K) = {dens} is below 2/3 + 2·{gamma}"))?;
    check(int(b.len()) >= gamma * int(g.n()), format!("|B| = {} is below {gamma}·n", b.len()))?;
    // Outside the precondition the bound may exceed 1; all of K then suffices.
    let ratio = (Rational::new(2, 3) + gamma).min(Rational::from_integer(1));
    let b1 = if dens >= dens_need {
        dense_subset(g, &kv, b, Rational::new(2, 3), gamma)?
    } else {
        high_degree_part(g, &kv, b, ratio)
    };
    let mut buckets: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    for v in b1.iter() {
        buckets.entry(g.neighbor_set(v).intersection(&kv).to_vec()).or_default().push(v);
    }
    let mut best = 0;
    let mut chosen: Option<FourPartite> = None;
    // Largest group first, then lexicographically smallest trace.
    let mut order: Vec<(&Vec<Vertex>, &Vec<Vertex>)> = buckets.iter().collect();
    order.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(b.0)));
    for (trace, group) in order {
        let tr = g.set_of(trace.iter().copied());
        let meet: Vec<Vec<Vertex>> = k.parts.iter().map(|p| p.iter().copied().filter(|&v| tr.contains(v)).collect()).collect();
        let usable = meet.iter().map(|m| m.len()).min().unwrap_or(0).min(group.len());
        best = best.max(usable);
        if usable >= need {
            chosen = Some(FourPartite {
                parts: [meet[0][..need].to_vec(), meet[1][..need].to_vec(), meet[2][..need].to_vec(), group[..need].to_vec()],
            });
            break;
        }
    }
    let k4 = chosen.ok_or(ExtendError::BucketShortfall { need, best })?;
    debug_assert!(k4.is_complete_in(g));
    Ok(Extension { k4, b1: b1.len(), bucket: need, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_itself_and_nothing_in_triangle_free() {
        let g = Graph::complete_multipartite(&[4, 4, 4]);
        let r = find_k3s(&g, 4, &g.vertex_set(), 3).unwrap();
        assert!(r.block.unwrap().is_complete_in(&g));
        let c = Graph::complete_multipartite(&[5, 5]);
        let r = find_k3s(&c, 1, &c.vertex_set(), 3).unwrap();
        assert!(r.block.is_none() && r.exact);
    }

    #[test]
    fn k4_extension_on_small_block() {
        // K₃(2) on 0..6 and four extra vertices joined to all of it.
        let g = Graph::from_fn(10, |u, v| (u < 6 && v < 6 && u / 2 != v / 2) || (u < 6) != (v < 6));
        let k = Tripartite::new([vec![0, 1], vec![2, 3], vec![4, 5]]);
        let b = g.set_of(6..10);
        let ext = extend_to_k4(&g, &k, &b, Rational::new(1, 2), false).unwrap();
        assert_eq!(ext.k4.parts.iter().map(|p| p.len()).collect::<Vec<_>>(), vec![1; 4]);
        assert!(ext.k4.is_complete_in(&g));
        assert!(!ext.warnings.is_empty());
        assert!(extend_to_k4(&g, &k, &b, Rational::new(1, 2), true).is_err());
    }

    #[test]
    fn k4_extension_shortfall() {
        // B sees only the first class of K.
        let g = Graph::from_fn(10, |u, v| (u < 6 && v < 6 && u / 2 != v / 2) || (u.min(v) < 2 && u.max(v) >= 6));
        let k = Tripartite::new([vec![0, 1], vec![2, 3], vec![4, 5]]);
        let r = extend_to_k4(&g, &k, &g.set_of(6..10), Rational::new(1, 2), false);
        assert!(matches!(r, Err(ExtendError::BucketShortfall { .. })));
    }

    #[test]
    fn split_gives_four_disjoint_blocks() {
        let g = Graph::complete_multipartite(&[3, 3, 3, 3]);
        let k4 = FourPartite { parts: [vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![9, 10, 11]] };
        assert!(k4.is_complete_in(&g));
        let blocks = k4.split().unwrap();
        let mut all: Vec<Vertex> = blocks.iter().flat_map(|t| t.vertices().collect::<Vec<_>>()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
        assert!(blocks.iter().all(|t| t.is_complete_in(&g) && t.len() == 3));
    }
}

//! Degree, density and Ore-degree arithmetic. Every threshold comparison is
//! done on exact rationals.

use serde::Serialize;

use crate::error::Precondition;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::params::int;
use crate::Rational;

/// `δ₂(G)`: minimum of `deg(u)+deg(v)` over non-adjacent pairs, or `None`
/// when `G` is complete.
pub fn ore_degree(g: &Graph) -> Option<usize> {
    ore_degree_within(g, &g.vertex_set())
}

/// Ore-degree of the pairs inside `set`, with degrees measured in the whole
/// graph.
pub fn ore_degree_within(g: &Graph, set: &VertexSet) -> Option<usize> {
    let mut best: Option<usize> = None;
    // Sorting by degree lets the scan stop early: once deg(u) + deg(v) for
    // the next candidate pair cannot beat the best, later pairs cannot either.
    let mut order: Vec<Vertex> = set.to_vec();
    order.sort_by_key(|&v| (g.degree(v), v));
    for (i, &u) in order.iter().enumerate() {
        if let Some(b) = best {
            if 2 * g.degree(u) >= b {
                break;
            }
        }
        for &v in &order[i + 1..] {
            let s = g.degree(u) + g.degree(v);
            if best.is_some_and(|b| s >= b) {
                break;
            }
            if !g.adjacent(u, v) {
                best = Some(s);
                break;
            }
        }
    }
    best
}

/// Ore-degree in the subgraph induced by `set` (degrees counted inside it).
pub fn induced_ore_degree(g: &Graph, set: &VertexSet) -> Option<usize> {
    let deg: Vec<(usize, Vertex)> = set.iter().map(|v| (g.degree_into(v, set), v)).collect();
    let mut order = deg;
    order.sort();
    let mut best: Option<usize> = None;
    for i in 0..order.len() {
        let (du, u) = order[i];
        if best.is_some_and(|b| 2 * du >= b) {
            break;
        }
        for &(dv, v) in &order[i + 1..] {
            if best.is_some_and(|b| du + dv >= b) {
                break;
            }
            if !g.adjacent(u, v) {
                best = Some(du + dv);
                break;
            }
        }
    }
    best
}

/// Whether `δ₂(G) ≥ (4/3 − k·ε)n`, with `δ₂` undefined counting as true.
pub fn ore_threshold(n: usize, eps: Rational, k: i64) -> Rational {
    (Rational::new(4, 3) - eps * Rational::from_integer(k)) * int(n)
}

pub fn satisfies_ore(g: &Graph, eps: Rational, k: i64) -> bool {
    match ore_degree(g) {
        None => true,
        Some(d) => int(d) >= ore_threshold(g.n(), eps, k),
    }
}

/// `d(A,B) = e(A,B)/(|A||B|)` for non-empty disjoint `A`, `B`.
pub fn density(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Rational, Precondition> {
    if a.is_empty() || b.is_empty() {
        return Err(Precondition::new("density needs non-empty sets"));
    }
    if !a.is_disjoint(b) {
        return Err(Precondition::new("density needs disjoint sets"));
    }
    let e = g.edges_between(a, b);
    Ok(Rational::new(e as i64, (a.len() * b.len()) as i64))
}

/// `d(A) = 2e(A)/|A|²`.
pub fn density_within(g: &Graph, a: &VertexSet) -> Result<Rational, Precondition> {
    if a.is_empty() {
        return Err(Precondition::new("density needs a non-empty set"));
    }
    let k = a.len() as i64;
    Ok(Rational::new(2 * g.edges_within(a) as i64, k * k))
}

/// `N(v₁,…,v_l, A)`; the empty list yields `A` itself.
pub fn common_neighborhood(g: &Graph, vs: &[Vertex], within: &VertexSet) -> VertexSet {
    let mut s = within.clone();
    for &v in vs {
        s.intersect_with(g.neighbor_set(v));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowDegreeSet {
    pub vertices: Vec<Vertex>,
    /// Whether `G[L]` is a clique.
    pub clique: bool,
    /// Whether `δ₂(G) ≥ (4/3 − 2ε)n` holds, in which case `clique` is forced.
    pub ore_condition: bool,
}

/// `L = {v : deg(v) < (2/3 − ε)n}` together with the clique check.
pub fn low_degree_set(g: &Graph, eps: Rational) -> Result<LowDegreeSet, Precondition> {
    let bound = (Rational::new(2, 3) - eps) * int(g.n());
    let vertices: Vec<Vertex> = (0..g.n()).filter(|&v| int(g.degree(v)) < bound).collect();
    let clique = vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.adjacent(u, v)));
    let ore_condition = satisfies_ore(g, eps, 2);
    if ore_condition && !clique {
        return Err(Precondition::new(
            "low-degree set is not a clique although the Ore condition holds",
        ));
    }
    Ok(LowDegreeSet { vertices, clique, ore_condition })
}

pub fn low_degree_bitset(g: &Graph, eps: Rational) -> VertexSet {
    let bound = (Rational::new(2, 3) - eps) * int(g.n());
    g.set_of((0..g.n()).filter(|&v| int(g.degree(v)) < bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_ore(g: &Graph) -> Option<usize> {
        let mut best = None;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.adjacent(u, v) {
                    let s = g.degree(u) + g.degree(v);
                    best = Some(best.map_or(s, |b: usize| b.min(s)));
                }
            }
        }
        best
    }

    #[test]
    fn ore_examples() {
        assert_eq!(ore_degree(&Graph::cycle(5)), Some(4));
        assert_eq!(ore_degree(&Graph::complete(4)), None);
        assert_eq!(ore_degree(&Graph::path(3)), Some(2));
    }

    #[test]
    fn ore_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..20);
            let p: f64 = rng.gen();
            let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
            assert_eq!(ore_degree(&g), brute_ore(&g));
            assert_eq!(induced_ore_degree(&g, &g.vertex_set()), brute_ore(&g));
        }
    }

    #[test]
    fn density_examples() {
        let g = Graph::complete_multipartite(&[2, 3]);
        let a = g.set_of([0, 1]);
        let b = g.set_of([2, 3, 4]);
        assert_eq!(density(&g, &a, &b).unwrap(), Rational::from_integer(1));
        let e = Graph::empty(5);
        assert_eq!(density(&e, &a, &b).unwrap(), Rational::from_integer(0));
        let one = Graph::from_edges(5, [(0, 2)]).unwrap();
        assert_eq!(density(&one, &a, &b).unwrap(), Rational::new(1, 6));
        assert!(density(&g, &g.empty_set(), &b).is_err());
        assert_eq!(density_within(&Graph::complete(4), &Graph::complete(4).vertex_set()).unwrap(), Rational::new(12, 16));
    }

    #[test]
    fn common_neighborhood_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(common_neighborhood(&k4, &[], &k4.vertex_set()).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(common_neighborhood(&k4, &[0, 1], &k4.vertex_set()).to_vec(), vec![2, 3]);
        let c5 = Graph::cycle(5);
        assert_eq!(common_neighborhood(&c5, &[0, 2], &c5.vertex_set()).to_vec(), vec![1]);
    }

    #[test]
    fn low_degree_examples() {
        let eps = Rational::new(1, 100);
        assert!(low_degree_set(&Graph::complete(10), eps).unwrap().vertices.is_empty());
        let k34 = Graph::complete_multipartite(&[4, 4, 4]);
        assert!(low_degree_set(&k34, Rational::new(1, 20)).unwrap().vertices.is_empty());
        let star = Graph::from_edges(10, (1..10).map(|i| (0, i))).unwrap();
        let l = low_degree_set(&star, Rational::new(1, 20)).unwrap();
        assert_eq!(l.vertices, (1..10).collect::<Vec<_>>());
        assert!(!l.clique);
        assert!(!l.ore_condition);
    }
}

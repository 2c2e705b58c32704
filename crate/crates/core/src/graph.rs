//! Simple undirected graphs over dense vertex ids `0..n`.
//!
//! Adjacency is stored both as sorted neighbor lists and as bit rows so that
//! common-neighborhood queries are word-parallel.

use std::fmt;

use crate::error::GraphError;

/// Vertex identifier. Ids are stable for the lifetime of a [`Graph`].
pub type Vertex = usize;

/// Fixed-capacity bitset over vertex ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    cap: usize,
}

impl VertexSet {
    pub fn new(cap: usize) -> Self {
        VertexSet { words: vec![0; cap.div_ceil(64)], cap }
    }

    pub fn full(cap: usize) -> Self {
        let mut s = Self::new(cap);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_iter<I: IntoIterator<Item = Vertex>>(cap: usize, it: I) -> Self {
        let mut s = Self::new(cap);
        for v in it {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.cap;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.cap && (self.words[v >> 6] >> (v & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(v < self.cap, "vertex {v} out of range {}", self.cap);
        let had = self.contains(v);
        self.words[v >> 6] |= 1 << (v & 63);
        !had
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) -> bool {
        if v >= self.cap {
            return false;
        }
        let had = self.contains(v);
        self.words[v >> 6] &= !(1 << (v & 63));
        had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.iter().next()
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Immutable simple undirected graph.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    lists: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops and out-of-range ids are
    /// rejected; duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut rows = vec![VertexSet::new(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    pub(crate) fn from_rows(rows: Vec<VertexSet>) -> Graph {
        let n = rows.len();
        let lists: Vec<Vec<Vertex>> = rows.iter().map(|r| r.to_vec()).collect();
        let m = lists.iter().map(|l| l.len()).sum::<usize>() / 2;
        Graph { n, rows, lists, m }
    }

    pub fn empty(n: usize) -> Graph {
        Self::from_rows(vec![VertexSet::new(n); n])
    }

    pub fn complete(n: usize) -> Graph {
        let rows = (0..n)
            .map(|v| {
                let mut r = VertexSet::full(n);
                r.remove(v);
                r
            })
            .collect();
        Self::from_rows(rows)
    }

    /// The cycle `0-1-…-(n-1)-0`.
    pub fn cycle(n: usize) -> Graph {
        Self::cycle_power(n, 1)
    }

    /// The `k`-th power of the cycle on `n` vertices in its natural order.
    pub fn cycle_power(n: usize, k: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for d in 1..=k {
                let j = (i + d) % n;
                if i != j {
                    edges.push((i, j));
                }
            }
        }
        Self::from_edges(n, edges).expect("cycle power edges are valid")
    }

    pub fn path(n: usize) -> Graph {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Complete multipartite graph with the given part sizes; parts are laid
    /// out consecutively starting at vertex 0.
    pub fn complete_multipartite(sizes: &[usize]) -> Graph {
        let n: usize = sizes.iter().sum();
        let mut part = Vec::with_capacity(n);
        for (p, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat(p).take(s));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if part[u] != part[v] {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, edges).expect("multipartite edges are valid")
    }

    /// Builds a graph from a symmetric adjacency predicate.
    pub fn from_fn(n: usize, mut adj: impl FnMut(Vertex, Vertex) -> bool) -> Graph {
        let mut rows = vec![VertexSet::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if adj(u, v) {
                    rows[u].insert(v);
                    rows[v].insert(u);
                }
            }
        }
        Self::from_rows(rows)
    }

    /// Subgraph induced by `vs`; vertex `i` of the result is `vs[i]`.
    pub fn induced(&self, vs: &[Vertex]) -> Graph {
        Self::from_fn(vs.len(), |i, j| self.adjacent(vs[i], vs[j]))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.lists[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.lists[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: Vertex) -> &VertexSet {
        &self.rows[v]
    }

    /// `deg(v, A)`.
    #[inline]
    pub fn degree_into(&self, v: Vertex, set: &VertexSet) -> usize {
        self.rows[v].intersection_len(set)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub fn set_of(&self, vs: impl IntoIterator<Item = Vertex>) -> VertexSet {
        VertexSet::from_iter(self.n, vs)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.lists[u].iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// `e(A)`: edges with both endpoints in `A`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.degree_into(v, set)).sum::<usize>() / 2
    }

    /// `e(A, B)` for disjoint `A`, `B`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|v| self.degree_into(v, b)).sum()
    }

    /// Lowest-id edge with both endpoints in `set`.
    pub fn first_edge_in(&self, set: &VertexSet) -> Option<(Vertex, Vertex)> {
        for u in set.iter() {
            let r = self.rows[u].intersection(set);
            let hit = r.iter().find(|&v| v > u);
            if let Some(v) = hit {
                return Some((u, v));
            }
        }
        None
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_basics() {
        let mut s = VertexSet::new(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![0, 129]);
        let full = VertexSet::full(130);
        assert_eq!(full.len(), 130);
        assert_eq!(full.intersection_len(&s), 2);
        assert!(s.is_subset(&full));
    }

    #[test]
    fn rejects_self_loops_and_range() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1))));
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn symmetric_adjacency() {
        let g = Graph::from_edges(4, [(0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.adjacent(1, 0) && g.adjacent(0, 1));
        assert!(!g.adjacent(0, 2));
    }

    #[test]
    fn multipartite_degrees() {
        let g = Graph::complete_multipartite(&[4, 4, 4]);
        assert!((0..12).all(|v| g.degree(v) == 8));
        assert_eq!(g.edge_count(), 48);
    }
}

//! Witness types and their verifiers.

use serde::{Deserialize, Serialize};

use crate::error::Precondition;
use crate::graph::{Graph, Vertex};

/// Why a sequence fails to be a square path or square cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OutOfRange { vertex: Vertex },
    Duplicate { vertex: Vertex },
    /// `seq[i]` and `seq[i+gap]` (indices mod length for cycles) are not adjacent.
    MissingEdge { i: usize, j: usize, u: Vertex, v: Vertex },
}

/// First violation of the square-path property, scanning left to right.
pub fn square_path_violation(g: &Graph, p: &[Vertex]) -> Option<Violation> {
    if let Some(v) = bad_ids(g, p) {
        return Some(v);
    }
    for i in 0..p.len() {
        for gap in 1..=2 {
            let j = i + gap;
            if j < p.len() && !g.adjacent(p[i], p[j]) {
                return Some(Violation::MissingEdge { i, j, u: p[i], v: p[j] });
            }
        }
    }
    None
}

fn bad_ids(g: &Graph, p: &[Vertex]) -> Option<Violation> {
    let mut seen = vec![false; g.n()];
    for &v in p {
        if v >= g.n() {
            return Some(Violation::OutOfRange { vertex: v });
        }
        if seen[v] {
            return Some(Violation::Duplicate { vertex: v });
        }
        seen[v] = true;
    }
    None
}

/// Entries distinct, and every pair at distance 1 or 2 adjacent.
pub fn verify_square_path(g: &Graph, p: &[Vertex]) -> bool {
    !p.is_empty() && square_path_violation(g, p).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleCheck {
    pub valid: bool,
    pub hamiltonian: bool,
}

pub fn square_cycle_violation(g: &Graph, c: &[Vertex]) -> Result<Option<Violation>, Precondition> {
    if c.len() < 5 {
        return Err(Precondition::new(format!(
            "square cycle needs length at least 5, got {}",
            c.len()
        )));
    }
    if let Some(v) = bad_ids(g, c) {
        return Ok(Some(v));
    }
    let len = c.len();
    for i in 0..len {
        for gap in 1..=2 {
            let j = (i + gap) % len;
            if !g.adjacent(c[i], c[j]) {
                return Ok(Some(Violation::MissingEdge { i, j, u: c[i], v: c[j] }));
            }
        }
    }
    Ok(None)
}

/// Cyclic analogue of [`verify_square_path`]; `hamiltonian` is set when the
/// cycle is valid and spans the graph.
pub fn verify_square_cycle(g: &Graph, c: &[Vertex]) -> Result<CycleCheck, Precondition> {
    let valid = square_cycle_violation(g, c)?.is_none();
    Ok(CycleCheck { valid, hamiltonian: valid && c.len() == g.n() })
}

/// Verified square path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarePath(pub Vec<Vertex>);

/// Verified square cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareCycle(pub Vec<Vertex>);

impl SquarePath {
    pub fn new(g: &Graph, seq: Vec<Vertex>) -> Option<Self> {
        verify_square_path(g, &seq).then_some(SquarePath(seq))
    }
}

impl SquareCycle {
    pub fn new(g: &Graph, seq: Vec<Vertex>) -> Option<Self> {
        matches!(verify_square_cycle(g, &seq), Ok(CycleCheck { valid: true, .. }))
            .then_some(SquareCycle(seq))
    }

    pub fn is_hamiltonian(&self, g: &Graph) -> bool {
        self.0.len() == g.n()
    }
}

/// A complete 3-partite subgraph with explicit color classes. Classes are
/// kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tripartite {
    pub parts: [Vec<Vertex>; 3],
}

impl Tripartite {
    pub fn new(mut parts: [Vec<Vertex>; 3]) -> Self {
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        Tripartite { parts }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.parts.iter().flatten().copied()
    }

    pub fn len(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn min_class(&self) -> usize {
        self.parts.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_class(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_balanced(&self) -> bool {
        self.min_class() == self.max_class()
    }

    /// Parts pairwise disjoint and every cross-part pair an edge.
    pub fn is_complete_in(&self, g: &Graph) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        if !self.vertices().all(|v| v < g.n() && seen.insert(v)) {
            return false;
        }
        for a in 0..3 {
            for b in a + 1..3 {
                for &u in &self.parts[a] {
                    if !self.parts[b].iter().all(|&v| g.adjacent(u, v)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Winding order `a₁b₁c₁a₂b₂c₂…` for a balanced tripartite graph.
    pub fn winding(&self) -> Vec<Vertex> {
        let t = self.min_class();
        (0..t).flat_map(|i| (0..3).map(move |h| (h, i))).map(|(h, i)| self.parts[h][i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_square_path(g: &Graph, p: &[Vertex]) -> bool {
        for i in 0..p.len() {
            for j in 0..p.len() {
                if i != j && p[i] == p[j] {
                    return false;
                }
            }
        }
        for i in 0..p.len() {
            if i + 1 < p.len() && !g.adjacent(p[i], p[i + 1]) {
                return false;
            }
            if i + 2 < p.len() && !g.adjacent(p[i], p[i + 2]) {
                return false;
            }
        }
        !p.is_empty()
    }

    #[test]
    fn path_examples() {
        let k6 = Graph::complete(6);
        assert!(verify_square_path(&k6, &[5, 2, 0, 1, 4, 3]));
        let c6 = Graph::cycle(6);
        assert!(!verify_square_path(&c6, &[1, 2, 3]));
        let k32 = Graph::complete_multipartite(&[2, 2, 2]);
        // a₁b₁c₁a₂b₂c₂ with parts {0,1},{2,3},{4,5}
        assert!(verify_square_path(&k32, &[0, 2, 4, 1, 3, 5]));
        assert!(!verify_square_path(&k6, &[0, 1, 0]));
    }

    #[test]
    fn cycle_examples() {
        let c92 = Graph::cycle_power(9, 2);
        let nat: Vec<_> = (0..9).collect();
        assert_eq!(verify_square_cycle(&c92, &nat).unwrap(), CycleCheck { valid: true, hamiltonian: true });
        assert!(!verify_square_cycle(&Graph::cycle(9), &nat).unwrap().valid);
        let k6 = Graph::complete(6);
        assert!(verify_square_cycle(&k6, &[0, 1, 2, 3, 4, 5]).unwrap().hamiltonian);
        assert!(verify_square_cycle(&k6, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn tripartite_winding() {
        let t = Tripartite::new([vec![0, 1], vec![2, 3], vec![4, 5]]);
        let g = Graph::complete_multipartite(&[2, 2, 2]);
        assert!(t.is_complete_in(&g));
        assert_eq!(t.winding(), vec![0, 2, 4, 1, 3, 5]);
        assert!(verify_square_path(&g, &t.winding()));
    }

    proptest::proptest! {
        #[test]
        fn verifier_matches_naive(bits in proptest::collection::vec(proptest::bool::ANY, 28),
                                  seq in proptest::collection::vec(0usize..8, 1..9)) {
            let mut k = 0;
            let g = Graph::from_fn(8, |_, _| { k += 1; bits[k - 1] });
            proptest::prop_assert_eq!(verify_square_path(&g, &seq), naive_square_path(&g, &seq));
        }
    }
}

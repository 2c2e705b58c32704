//! Exact brute-force searches. These are the references everything else
//! is checked against, so they favour obviousness over speed.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{OracleError, Precondition};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::verify::{SquareCycle, Tripartite};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl SearchBudget {
    pub fn new(node_limit: u64, time_limit: Duration) -> Result<Self, OracleError> {
        if node_limit == 0 || time_limit.is_zero() {
            return Err(OracleError::Precondition(Precondition::new("search budget must be positive")));
        }
        Ok(SearchBudget { node_limit, time_limit })
    }

    /// A node-only budget; the time limit is effectively unbounded, which
    /// keeps outcomes reproducible.
    pub fn nodes(node_limit: u64) -> Self {
        SearchBudget { node_limit: node_limit.max(1), time_limit: Duration::from_secs(86_400) }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::nodes(50_000_000)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found(T),
    NotExists,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct Meter {
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    exhausted: bool,
}

impl Meter {
    fn new(budget: SearchBudget) -> Self {
        Meter { nodes: 0, budget, start: Instant::now(), exhausted: false }
    }

    /// Counts one node; returns false once the budget is gone.
    fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.budget.node_limit
            || (self.nodes % 4096 == 0 && self.start.elapsed() > self.budget.time_limit)
        {
            self.exhausted = true;
        }
        !self.exhausted
    }
}

/// Backtracking search for a square Hamiltonian cycle.
///
/// The state is the partial sequence; the next vertex must be a common
/// neighbour of the last two. Vertex 0 is fixed first and the cycle is
/// oriented so that its successor has the smaller id of its two cycle
/// neighbours.
pub fn exact_square_ham_cycle(
    g: &Graph,
    budget: SearchBudget,
) -> Result<SearchOutcome<SquareCycle>, OracleError> {
    let n = g.n();
    if n < 5 {
        return Err(OracleError::Precondition(Precondition::new(format!("need n >= 5, got {n}"))));
    }
    if g.min_degree() < 4 {
        return Ok(SearchOutcome::NotExists);
    }
    let mut s = CycleSearch { g, seq: vec![0], remaining: g.vertex_set(), meter: Meter::new(budget) };
    s.remaining.remove(0);
    let found = s.first_two();
    Ok(match (found, s.meter.exhausted) {
        (true, _) => SearchOutcome::Found(SquareCycle(s.seq)),
        (false, true) => SearchOutcome::BudgetExhausted,
        (false, false) => SearchOutcome::NotExists,
    })
}

struct CycleSearch<'a> {
    g: &'a Graph,
    seq: Vec<Vertex>,
    remaining: VertexSet,
    meter: Meter,
}

impl CycleSearch<'_> {
    fn first_two(&mut self) -> bool {
        let g = self.g;
        for c1 in g.neighbors(0).to_vec() {
            // c1 must be smaller than the last vertex, which is another neighbour of 0.
            if !g.neighbors(0).iter().any(|&x| x > c1) {
                continue;
            }
            self.place(c1);
            if self.extend() {
                return true;
            }
            self.unplace(c1);
            if self.meter.exhausted {
                return false;
            }
        }
        false
    }

    fn place(&mut self, v: Vertex) {
        self.seq.push(v);
        self.remaining.remove(v);
    }

    fn unplace(&mut self, v: Vertex) {
        self.seq.pop();
        self.remaining.insert(v);
    }

    fn extend(&mut self) -> bool {
        if !self.meter.tick() {
            return false;
        }
        let g = self.g;
        let len = self.seq.len();
        let (c0, c1) = (self.seq[0], self.seq[1]);
        if self.remaining.is_empty() {
            let (a, b) = (self.seq[len - 2], self.seq[len - 1]);
            return g.adjacent(b, c0) && g.adjacent(b, c1) && g.adjacent(a, c0) && c1 < b;
        }
        if !self.feasible() {
            return false;
        }
        let (a, b) = (self.seq[len - 2], self.seq[len - 1]);
        let mut cand = self.remaining.intersection(g.neighbor_set(a));
        cand.intersect_with(g.neighbor_set(b));
        for v in cand.iter() {
            if self.remaining.len() == 1 && !(g.adjacent(v, c0) && g.adjacent(v, c1) && c1 < v) {
                continue;
            }
            if self.remaining.len() == 2 && !g.adjacent(v, c0) {
                continue;
            }
            self.place(v);
            if self.extend() {
                return true;
            }
            self.unplace(v);
            if self.meter.exhausted {
                return false;
            }
        }
        false
    }

    /// Necessary conditions on the unplaced vertices: each keeps four
    /// possible cycle neighbours, and together they induce a connected graph.
    fn feasible(&self) -> bool {
        let g = self.g;
        let len = self.seq.len();
        let mut pool = self.remaining.clone();
        for &v in [self.seq[0], self.seq[1], self.seq[len - 2], self.seq[len - 1]].iter() {
            pool.insert(v);
        }
        if self.remaining.iter().any(|v| g.degree_into(v, &pool) < 4) {
            return false;
        }
        let r = self.remaining.len();
        if r >= 2 && g.degree_into(self.seq[0], &self.remaining) < 2 {
            return false;
        }
        if g.degree_into(self.seq[1], &self.remaining) < 1 && len > 2 {
            return false;
        }
        connected_within(g, &self.remaining)
    }
}

fn connected_within(g: &Graph, set: &VertexSet) -> bool {
    let Some(start) = set.first() else { return true };
    let mut seen = g.empty_set();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        let mut fresh = g.neighbor_set(u).intersection(set);
        fresh.difference_with(&seen);
        for v in fresh.iter() {
            seen.insert(v);
            stack.push(v);
        }
    }
    seen.len() == set.len()
}

/// Search for a complete balanced tripartite subgraph `K₃(t)`.
///
/// Classes are filled round-robin, each in increasing id order, with class
/// minima increasing from the first class to the third, so every unordered
/// triple of classes is visited once.
pub fn exact_k3t(
    g: &Graph,
    t: usize,
    budget: SearchBudget,
) -> Result<SearchOutcome<Tripartite>, OracleError> {
    if t == 0 || 3 * t > g.n() {
        return Err(OracleError::Precondition(Precondition::new(format!("need 1 <= t and 3t <= n (t = {t}, n = {})", g.n()))));
    }
    let mut s = K3Search {
        g,
        t,
        parts: [Vec::new(), Vec::new(), Vec::new()],
        cand: [g.vertex_set(), g.vertex_set(), g.vertex_set()],
        meter: Meter::new(budget),
    };
    let found = s.step(0);
    Ok(match (found, s.meter.exhausted) {
        (true, _) => SearchOutcome::Found(Tripartite::new(s.parts)),
        (false, true) => SearchOutcome::BudgetExhausted,
        (false, false) => SearchOutcome::NotExists,
    })
}

struct K3Search<'a> {
    g: &'a Graph,
    t: usize,
    parts: [Vec<Vertex>; 3],
    /// Vertices adjacent to everything placed in the other two classes and
    /// not yet used.
    cand: [VertexSet; 3],
    meter: Meter,
}

impl K3Search<'_> {
    fn step(&mut self, k: usize) -> bool {
        if k == 3 * self.t {
            return true;
        }
        if !self.meter.tick() {
            return false;
        }
        let h = k % 3;
        let placed = self.parts[h].len();
        for c in 0..3 {
            if self.cand[c].len() < self.t - self.parts[c].len() {
                return false;
            }
        }
        let lower = match (placed, h) {
            (0, 0) => None,
            (0, _) => self.parts[h - 1].first().copied(),
            _ => self.parts[h].last().copied(),
        };
        let options: Vec<Vertex> = self.cand[h].iter().filter(|&v| lower.is_none_or(|l| v > l)).collect();
        for v in options {
            let saved = self.cand.clone();
            self.parts[h].push(v);
            for c in 0..3 {
                self.cand[c].remove(v);
                if c != h {
                    self.cand[c].intersect_with(self.g.neighbor_set(v));
                }
            }
            if self.step(k + 1) {
                return true;
            }
            self.parts[h].pop();
            self.cand = saved;
            if self.meter.exhausted {
                return false;
            }
        }
        false
    }
}

/// All triangles inside `a`, each once, sorted lexicographically.
pub fn enumerate_triangles(g: &Graph, a: &VertexSet) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for u in a.iter() {
        let nu = g.neighbor_set(u).intersection(a);
        for v in nu.iter().filter(|&v| v > u) {
            let nuv = nu.intersection(g.neighbor_set(v));
            for w in nuv.iter().filter(|&w| w > v) {
                out.push([u, v, w]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gnp(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Graph::from_fn(n, |_, _| rng.gen_bool(p))
    }

    #[test]
    fn cycle_examples() {
        let b = SearchBudget::default();
        let c92 = Graph::cycle_power(9, 2);
        let out = exact_square_ham_cycle(&c92, b).unwrap();
        let w = out.found().expect("C9 squared has a square cycle");
        assert!(crate::verify_square_cycle(&c92, &w.0).unwrap().hamiltonian);
        assert_eq!(exact_square_ham_cycle(&Graph::cycle(9), b).unwrap(), SearchOutcome::NotExists);
        assert!(exact_square_ham_cycle(&Graph::complete(4), b).is_err());
    }

    #[test]
    fn tiny_budget_is_distinguishable() {
        let g = gnp(12, 0.75, 3);
        let out = exact_square_ham_cycle(&g, SearchBudget::nodes(1)).unwrap();
        assert!(matches!(out, SearchOutcome::BudgetExhausted | SearchOutcome::Found(_)));
    }

    #[test]
    fn k3t_examples() {
        let b = SearchBudget::default();
        let k33 = Graph::complete_multipartite(&[3, 3, 3]);
        let out = exact_k3t(&k33, 3, b).unwrap();
        assert!(out.found().unwrap().is_complete_in(&k33));
        let bip = Graph::complete_multipartite(&[4, 4]);
        assert_eq!(exact_k3t(&bip, 1, b).unwrap(), SearchOutcome::NotExists);
        assert!(exact_k3t(&bip, 3, b).is_err());
    }

    #[test]
    fn triangle_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(enumerate_triangles(&k4, &k4.vertex_set()).len(), 4);
        let c6 = Graph::cycle(6);
        assert!(enumerate_triangles(&c6, &c6.vertex_set()).is_empty());
        let g = gnp(15, 0.5, 11);
        let mut naive = 0;
        for a in 0..15 {
            for b in a + 1..15 {
                for c in b + 1..15 {
                    naive += (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c)) as usize;
                }
            }
        }
        assert_eq!(enumerate_triangles(&g, &g.vertex_set()).len(), naive);
    }
}

//! Deciding which of the three extremal conditions (if any) a graph meets.
//!
//! Condition 1 is a single low-degree vertex and is checked exactly. The
//! other two ask for large sparse sets; that search is exhaustive for
//! `n ≤ 16` and a randomized peeling heuristic otherwise, in which case a
//! negative answer is only advisory.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Precondition;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::params::{ceil_usize, int};
use crate::Rational;

pub const EXACT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "EC1")]
    Ec1,
    #[serde(rename = "EC2")]
    Ec2,
    #[serde(rename = "EC3")]
    Ec3,
    NonExtremal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub condition: Condition,
    pub mode: Mode,
    pub low_vertex: Option<Vertex>,
    pub a1: Option<Vec<Vertex>>,
    pub a2: Option<Vec<Vertex>>,
    /// True when every negative conclusion in this report is exact.
    pub certified: bool,
    /// Statements downstream code relies on when the verdict is
    /// `NonExtremal`.
    pub assumptions: Vec<String>,
}

/// A vertex of minimum degree if it has `deg(v) < (1/3 + α)n`.
pub fn check_ec1(g: &Graph, alpha: Rational) -> Option<Vertex> {
    let bound = (Rational::new(1, 3) + alpha) * int(g.n());
    (0..g.n()).min_by_key(|&v| (g.degree(v), v)).filter(|&v| int(g.degree(v)) < bound)
}

/// `⌈(1/3 − α)n⌉`, the size a sparse witness must reach.
pub fn sparse_target(n: usize, alpha: Rational) -> usize {
    ceil_usize((Rational::new(1, 3) - alpha) * int(n)).max(1)
}

/// Re-verifies a sparse-set witness with exact arithmetic.
pub fn is_sparse_witness(g: &Graph, set: &VertexSet, alpha: Rational) -> bool {
    set.len() >= sparse_target(g.n(), alpha)
        && crate::measures::density_within(g, set).is_ok_and(|d| d < alpha)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSearch {
    pub set: Option<Vec<Vertex>>,
    pub mode: Mode,
}

/// Searches for `A ⊆ within` with `|A| ≥ ⌈(1/3−α)n⌉` and `d(A) < α`.
///
/// Exact mode enumerates subsets of exactly the target size: a sparse set
/// larger than the target always contains a target-size subset at most as
/// dense, so this is complete.
pub fn find_sparse_set(
    g: &Graph,
    alpha: Rational,
    mode: Mode,
    within: &VertexSet,
    seed: u64,
    restarts: usize,
) -> Result<SparseSearch, Precondition> {
    let k = sparse_target(g.n(), alpha);
    let set = match mode {
        Mode::Exact => {
            if g.n() > EXACT_LIMIT {
                return Err(Precondition::new(format!(
                    "exact sparse-set search needs n <= {EXACT_LIMIT}, got {}",
                    g.n()
                )));
            }
            let masks = sparse_masks(g, alpha, k, mask_of(within));
            masks.first().map(|&m| bits(m))
        }
        Mode::Heuristic => peel(g, alpha, k, within, seed, restarts),
    };
    Ok(SparseSearch { set, mode })
}

fn mask_of(s: &VertexSet) -> u32 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

fn bits(m: u32) -> Vec<Vertex> {
    (0..32).filter(|&i| m >> i & 1 == 1).collect()
}

fn sparse_mask(g: &Graph, mask: u32, alpha: Rational) -> bool {
    let vs = bits(mask);
    let mut e = 0i64;
    for (i, &u) in vs.iter().enumerate() {
        e += vs[i + 1..].iter().filter(|&&v| g.adjacent(u, v)).count() as i64;
    }
    let k = vs.len() as i64;
    Rational::new(2 * e, k * k) < alpha
}

/// Every sparse target-size subset of `universe`, in increasing mask order.
fn sparse_masks(g: &Graph, alpha: Rational, k: usize, universe: u32) -> Vec<u32> {
    if k > universe.count_ones() as usize {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut sub = universe;
    // Walk all submasks of the universe, keeping the ones of size k.
    loop {
        if sub.count_ones() as usize == k && sparse_mask(g, sub, alpha) {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & universe;
    }
    out.sort_unstable();
    out
}

/// Min-internal-degree peeling: repeatedly drop the vertex with most
/// neighbours left inside the set, recording the sparsest admissible set
/// passed through. Restart 0 breaks ties by lowest id, later restarts at
/// random.
fn peel(g: &Graph, alpha: Rational, k: usize, within: &VertexSet, seed: u64, restarts: usize) -> Option<Vec<Vertex>> {
    let verts = within.to_vec();
    if verts.len() < k {
        return None;
    }
    let mut best: Option<(Rational, Vec<Vertex>)> = None;
    for r in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut prio: Vec<u64> = vec![0; g.n()];
        if r > 0 {
            for &v in &verts {
                prio[v] = rng.gen();
            }
        }
        let mut alive = within.clone();
        let mut deg = vec![0usize; g.n()];
        let mut edges = 0usize;
        for &v in &verts {
            deg[v] = g.degree_into(v, within);
            edges += deg[v];
        }
        edges /= 2;
        let mut size = verts.len();
        let mut order = verts.clone();
        if r > 0 {
            order.shuffle(&mut rng);
        }
        loop {
            if size >= k {
                let d = Rational::new(2 * edges as i64, (size * size) as i64);
                if d < alpha && best.as_ref().is_none_or(|(b, _)| d < *b) {
                    best = Some((d, alive.to_vec()));
                }
            }
            if size <= k {
                break;
            }
            let v = order
                .iter()
                .copied()
                .filter(|&v| alive.contains(v))
                .max_by_key(|&v| (deg[v], prio[v], std::cmp::Reverse(v)))
                .expect("alive set is non-empty");
            alive.remove(v);
            size -= 1;
            edges -= deg[v];
            for &u in g.neighbors(v) {
                if alive.contains(u) {
                    deg[u] -= 1;
                }
            }
        }
    }
    best.map(|(_, s)| s)
}

fn default_mode(n: usize) -> Mode {
    if n <= EXACT_LIMIT {
        Mode::Exact
    } else {
        Mode::Heuristic
    }
}

/// Full classification. `mode` defaults to exact when `n ≤ 16`.
///
/// All three conditions are evaluated and every witness found is reported.
/// The headline `condition` prefers the structural ones: two disjoint
/// sparse sets, else one sparse set, else a low-degree vertex.
pub fn classify(g: &Graph, alpha: Rational, mode: Option<Mode>, seed: u64, restarts: usize) -> Result<ExtremalReport, Precondition> {
    let mode = mode.unwrap_or_else(|| default_mode(g.n()));
    let mut report = ExtremalReport {
        condition: Condition::NonExtremal,
        mode,
        low_vertex: check_ec1(g, alpha),
        a1: None,
        a2: None,
        certified: mode == Mode::Exact,
        assumptions: Vec::new(),
    };
    match mode {
        Mode::Exact => classify_exact(g, alpha, &mut report)?,
        Mode::Heuristic => {
            let all = g.vertex_set();
            if let Some(a1) = find_sparse_set(g, alpha, mode, &all, seed, restarts)?.set {
                let rest = all.difference(&g.set_of(a1.iter().copied()));
                let a2 = find_sparse_set(g, alpha, mode, &rest, seed.wrapping_add(1), restarts)?.set;
                report.condition = if a2.is_some() { Condition::Ec2 } else { Condition::Ec3 };
                report.certified = a2.is_some();
                report.a1 = Some(a1);
                report.a2 = a2;
            }
        }
    }
    if report.condition == Condition::NonExtremal && report.low_vertex.is_some() {
        report.condition = Condition::Ec1;
        report.certified = mode == Mode::Exact;
    }
    if report.condition == Condition::NonExtremal {
        let k = sparse_target(g.n(), alpha);
        report.assumptions = vec![
            format!("min degree >= (1/3 + {alpha})n"),
            format!("every vertex set of size >= {k} has density >= {alpha}"),
        ];
        if !report.certified {
            report.assumptions.push("sparse-set absence is heuristic, not certified".into());
        }
    }
    Ok(report)
}

fn classify_exact(g: &Graph, alpha: Rational, report: &mut ExtremalReport) -> Result<(), Precondition> {
    let n = g.n();
    if n > EXACT_LIMIT {
        return Err(Precondition::new(format!("exact classification needs n <= {EXACT_LIMIT}, got {n}")));
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let k = sparse_target(n, alpha);
    let sparse = sparse_masks(g, alpha, k, full);
    let Some(&first) = sparse.first() else { return Ok(()) };
    // within[m]: some sparse k-set lies inside m (closure over supersets).
    let mut within = vec![false; 1 << n];
    for &m in &sparse {
        within[m as usize] = true;
    }
    for b in 0..n {
        for m in 0..(1usize << n) {
            if m >> b & 1 == 1 && within[m ^ (1 << b)] {
                within[m] = true;
            }
        }
    }
    for &m in &sparse {
        let comp = full & !m;
        if within[comp as usize] {
            let second = sparse_masks(g, alpha, k, comp)[0];
            report.condition = Condition::Ec2;
            report.a1 = Some(bits(m));
            report.a2 = Some(bits(second));
            return Ok(());
        }
    }
    report.condition = Condition::Ec3;
    report.a1 = Some(bits(first));
    Ok(())
}

//! Seeded instance generators. Every generator re-checks its declared
//! guarantees with exact arithmetic before returning.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Precondition;
use crate::extremal::cover::{cross_min_degree, Parts};
use crate::extremal::repair::bad_vertices;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::measures::{ore_degree, ore_threshold};
use crate::oracles::{exact_square_ham_cycle, SearchBudget, SearchOutcome};
use crate::params::{ceil_usize, int, Parameters};
use crate::verify::Tripartite;
use crate::Rational;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn bernoulli(rng: &mut ChaCha8Rng, p: Rational) -> bool {
    if p >= Rational::from_integer(1) {
        return true;
    }
    if p <= Rational::from_integer(0) {
        return false;
    }
    rng.gen_ratio(*p.numer() as u32, *p.denom() as u32)
}

/// Classes `0..m`, `m..2m`, `2m..3m`.
pub fn standard_parts(m: usize) -> Parts {
    [(0..m).collect(), (m..2 * m).collect(), (2 * m..3 * m).collect()]
}

/// `G(n, p)` with an exact rational edge probability.
pub fn gen_gnp(n: usize, p: Rational, seed: u64) -> Result<Graph, Precondition> {
    if p < Rational::from_integer(0) || p > Rational::from_integer(1) {
        return Err(Precondition::new(format!("edge probability {p} must lie in [0,1]")));
    }
    if *p.denom() > u32::MAX as i64 {
        return Err(Precondition::new(format!("edge probability {p} has too large a denominator")));
    }
    let mut rng = rng_for(seed, 3);
    Ok(Graph::from_fn(n, |_, _| bernoulli(&mut rng, p)))
}

/// Triangles `012` and `345` plus the cross edge `(i, 3 + j)` for every set
/// bit `3i + j` of `mask`. The 512 masks are all cross patterns.
pub fn two_triangles(mask: u16) -> Graph {
    Graph::from_fn(6, |u, v| {
        if (u < 3) == (v < 3) {
            return true;
        }
        let (i, j) = (u.min(v), u.max(v) - 3);
        mask >> (3 * i + j) & 1 == 1
    })
}

/// Deletes cross edges of `K₃(m)` in random order, each only if both
/// endpoints keep at least `⌈(1−α′)m⌉` neighbours in the other's class.
pub fn gen_near_complete_tripartite(m: usize, alpha_prime: Rational, seed: u64) -> Result<Graph, Precondition> {
    if m < 2 || alpha_prime < Rational::from_integer(0) || alpha_prime >= Rational::new(1, 2) {
        return Err(Precondition::new(format!("need m >= 2 and 0 <= alpha' < 1/2 (m = {m}, alpha' = {alpha_prime})")));
    }
    let floor = ceil_usize((Rational::from_integer(1) - alpha_prime) * int(m));
    let mut rng = rng_for(seed, 1);
    let keep = VertexSet::full(3 * m);
    let g = prune_cross_edges(m, &Graph::complete_multipartite(&[m, m, m]), floor, &keep, &mut rng);
    debug_assert!(cross_min_degree(&g, &standard_parts(m)) >= floor);
    Ok(g)
}

/// Random deletion pass over cross pairs whose endpoints lie in `eligible`,
/// keeping every cross degree of those endpoints at least `floor`.
fn prune_cross_edges(m: usize, g: &Graph, floor: usize, eligible: &VertexSet, rng: &mut ChaCha8Rng) -> Graph {
    let class = |v: Vertex| v / m;
    let mut rows: Vec<VertexSet> = (0..g.n()).map(|v| g.neighbor_set(v).clone()).collect();
    // cross[v][c]: neighbours of v in class c.
    let mut cross = vec![[0usize; 3]; g.n()];
    for v in 0..g.n() {
        for &u in g.neighbors(v) {
            cross[v][class(u)] += 1;
        }
    }
    let mut pairs: Vec<(Vertex, Vertex)> =
        g.edges().filter(|&(u, v)| class(u) != class(v) && eligible.contains(u) && eligible.contains(v)).collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        let (cu, cv) = (class(u), class(v));
        if cross[u][cv] > floor && cross[v][cu] > floor {
            rows[u].remove(v);
            rows[v].remove(u);
            cross[u][cv] -= 1;
            cross[v][cu] -= 1;
        }
    }
    Graph::from_rows(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct BadVertexInstance {
    #[serde(skip)]
    pub graph: Graph,
    pub m: usize,
    pub bad: Vec<Vertex>,
}

/// Balanced tripartite graph with exactly `⌈βm/2⌉` bad vertices per class
/// (fewer than `(1−α′)m` neighbours in some other class), every cross
/// degree at least `γm`, and all other vertices typical.
///
/// A bad vertex loses edges to its next class. Deletions go to other bad
/// vertices first (they may fall to `⌈γm⌉`) and then to typical vertices
/// that still have slack under the `(1−α′)m` floor.
pub fn gen_bad_vertex_instance(m: usize, alpha_prime: Rational, beta: Rational, gamma: Rational, seed: u64) -> Result<BadVertexInstance, Precondition> {
    let zero = Rational::from_integer(0);
    if m < 2 || alpha_prime < zero || beta < zero || gamma <= zero || gamma >= Rational::from_integer(1) {
        return Err(Precondition::new("need m >= 2, alpha', beta >= 0 and 0 < gamma < 1"));
    }
    if !(alpha_prime <= beta / 4 && beta / 4 <= gamma / 16) {
        return Err(Precondition::new(format!("need alpha' <= beta/4 <= gamma/16 ({alpha_prime}, {beta}, {gamma})")));
    }
    let per_class = ceil_usize(beta * int(m) / 2);
    if per_class == 0 {
        let graph = gen_near_complete_tripartite(m, alpha_prime, seed)?;
        return Ok(BadVertexInstance { graph, m, bad: Vec::new() });
    }
    let typical_floor = ceil_usize((Rational::from_integer(1) - alpha_prime) * int(m));
    let bad_floor = ceil_usize(gamma * int(m)).max(1);
    if per_class > m || typical_floor <= bad_floor {
        return Err(Precondition::new("infeasible bad-vertex parameters"));
    }
    let mut rng = rng_for(seed, 2);
    let class = |v: Vertex| v / m;
    let mut bad: Vec<Vertex> = Vec::new();
    for c in 0..3 {
        let mut ids: Vec<Vertex> = (c * m..(c + 1) * m).collect();
        ids.shuffle(&mut rng);
        bad.extend(&ids[..per_class]);
    }
    bad.sort_unstable();
    let is_bad = {
        let mut b = vec![false; 3 * m];
        for &v in &bad {
            b[v] = true;
        }
        b
    };
    let base = Graph::complete_multipartite(&[m, m, m]);
    let mut rows: Vec<VertexSet> = (0..3 * m).map(|v| base.neighbor_set(v).clone()).collect();
    let mut cross = vec![[m; 3]; 3 * m];
    for v in 0..3 * m {
        cross[v][class(v)] = 0;
    }
    let floor_of = |v: Vertex| if is_bad[v] { bad_floor } else { typical_floor };
    // Each bad vertex must end strictly below the typical floor.
    for &u in &bad {
        let target = (class(u) + 1) % 3;
        let need_below = typical_floor - 1;
        let goal = rng.gen_range(bad_floor.max(need_below.saturating_sub(2))..=need_below);
        let mut partners: Vec<Vertex> = (target * m..(target + 1) * m).filter(|&w| rows[u].contains(w)).collect();
        partners.shuffle(&mut rng);
        partners.sort_by_key(|&w| !is_bad[w]);
        for w in partners {
            if cross[u][target] <= goal {
                break;
            }
            if cross[w][class(u)] > floor_of(w) {
                rows[u].remove(w);
                rows[w].remove(u);
                cross[u][target] -= 1;
                cross[w][class(u)] -= 1;
            }
        }
        if cross[u][target] >= typical_floor {
            return Err(Precondition::new(format!("could not make vertex {u} bad without breaking a floor")));
        }
    }
    let graph = Graph::from_rows(rows);
    // Typical-typical noise within the remaining slack.
    let typical = VertexSet::from_iter(3 * m, (0..3 * m).filter(|&v| !is_bad[v]));
    let graph = prune_cross_edges(m, &graph, typical_floor, &typical, &mut rng);
    let parts = standard_parts(m);
    let check = bad_vertices(&graph, &parts, alpha_prime);
    if check != bad || int(cross_min_degree(&graph, &parts)) < gamma * int(m) {
        return Err(Precondition::new("post-check failed: bad set or gamma floor not as planted"));
    }
    Ok(BadVertexInstance { graph, m, bad })
}

#[derive(Debug, Clone, Serialize)]
pub struct Plan {
    pub blocks: Vec<Tripartite>,
    pub class_size: usize,
    #[serde(with = "crate::ratio_serde")]
    pub noise: Rational,
    pub seed: u64,
    /// Resampling attempts used (1 means the first sample passed).
    pub attempts: usize,
    pub ore_degree: Option<usize>,
    pub coverage: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlantedInstance {
    #[serde(skip)]
    pub graph: Graph,
    pub plan: Plan,
}

/// Disjoint complete tripartite blocks with classes of `class_size`,
/// covering at least `(1−η)n` vertices, on shuffled vertex ids. Every pair
/// not forced by a block is an edge with probability `noise`; leftovers are
/// attached the same way. Resampled until `δ₂ ≥ (4/3 − 2ε)n`.
pub fn gen_cover_plus_noise(n: usize, class_size: usize, noise: Rational, seed: u64, params: &Parameters) -> Result<PlantedInstance, Precondition> {
    if class_size < crate::params::CONNECT_CLASS_FLOOR {
        return Err(Precondition::new(format!("class size {class_size} is below {}", crate::params::CONNECT_CLASS_FLOOR)));
    }
    if noise < Rational::from_integer(0) || noise > Rational::from_integer(1) {
        return Err(Precondition::new("noise must lie in [0, 1]"));
    }
    let need = (Rational::from_integer(1) - params.eta) * int(n);
    let blocks = ceil_usize(need / int(3 * class_size));
    if blocks * 3 * class_size > n || blocks == 0 {
        return Err(Precondition::new(format!("n = {n} too small for blocks of class size {class_size}")));
    }
    let threshold = ore_threshold(n, params.eps, 2);
    for attempt in 0..100u64 {
        let mut rng = rng_for(seed, 100 + attempt);
        let mut ids: Vec<Vertex> = (0..n).collect();
        ids.shuffle(&mut rng);
        let mut block_of = vec![usize::MAX; n];
        let mut class_of = vec![usize::MAX; n];
        let mut plan_blocks = Vec::new();
        for b in 0..blocks {
            let mut parts: [Vec<Vertex>; 3] = Default::default();
            for (c, part) in parts.iter_mut().enumerate() {
                let start = (3 * b + c) * class_size;
                *part = ids[start..start + class_size].to_vec();
                for &v in part.iter() {
                    block_of[v] = b;
                    class_of[v] = c;
                }
            }
            plan_blocks.push(Tripartite::new(parts));
        }
        let g = Graph::from_fn(n, |u, v| {
            let forced = block_of[u] != usize::MAX && block_of[u] == block_of[v] && class_of[u] != class_of[v];
            forced || bernoulli(&mut rng, noise)
        });
        let d2 = ore_degree(&g);
        if d2.is_none_or(|d| int(d) >= threshold) {
            debug_assert!(plan_blocks.iter().all(|t| t.is_complete_in(&g)));
            let plan = Plan {
                coverage: blocks * 3 * class_size,
                blocks: plan_blocks,
                class_size,
                noise,
                seed,
                attempts: attempt as usize + 1,
                ore_degree: d2,
            };
            return Ok(PlantedInstance { graph: g, plan });
        }
    }
    Err(Precondition::new("no sample met the Ore-degree post-check in 100 attempts"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tightness {
    /// `δ₂ = 4n/3` and `δ = n/3 + 2`.
    LowVertex,
    /// `δ₂ = (4n − 2)/3`.
    CliqueJoin,
}

#[derive(Debug, Clone, Serialize)]
pub struct TightnessSearch {
    pub outcome: &'static str,
    #[serde(skip)]
    pub graph: Option<Graph>,
    pub candidates_tried: usize,
    pub oracle_calls: usize,
}

/// Searches structured families for a graph meeting the target's degree
/// equalities that has no square Hamiltonian cycle.
///
/// Low-vertex family: a vertex `v` of degree `n/3 + 2` whose neighbourhood `X`
/// induces some graph (all graphs on `X` are tried), the remaining vertices
/// a clique joined to `X` but not to `v`. Clique-join family: a set `X` inducing
/// some graph, joined completely to a clique on the rest, for every `|X|`.
/// Graphs on `X` are enumerated by edge mask, so the budget bounds how many
/// are examined.
pub fn search_tightness_example(n: usize, target: Tightness, budget: SearchBudget) -> Result<TightnessSearch, Precondition> {
    if n > 12 || n < 5 {
        return Err(Precondition::new(format!("tightness search needs 5 <= n <= 12, got {n}")));
    }
    match target {
        Tightness::LowVertex if n % 3 != 0 => return Err(Precondition::new(format!("low_vertex needs n divisible by 3, got {n}"))),
        Tightness::CliqueJoin if (4 * n - 2) % 3 != 0 => {
            return Err(Precondition::new(format!("clique_join needs (4n - 2)/3 integral, got n = {n}")))
        }
        _ => {}
    }
    let mut report = TightnessSearch { outcome: "not_found", graph: None, candidates_tried: 0, oracle_calls: 0 };
    let mut exhausted = false;
    let families: Vec<(usize, bool)> = match target {
        Tightness::LowVertex => vec![(n / 3 + 2, true)],
        Tightness::CliqueJoin => (1..n).map(|k| (k, false)).collect(),
    };
    for (k, with_apex) in families {
        let xs: Vec<Vertex> = if with_apex { (1..=k).collect() } else { (0..k).collect() };
        if with_apex && k + 1 > n {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        let total: u64 = 1u64 << pairs.len().min(40);
        for mask in 0..total {
            if report.candidates_tried as u64 >= budget.node_limit {
                exhausted = true;
                break;
            }
            report.candidates_tried += 1;
            let in_x = |v: Vertex| xs.contains(&v);
            let g = Graph::from_fn(n, |u, v| {
                if with_apex && (u == 0 || v == 0) {
                    let w = if u == 0 { v } else { u };
                    return in_x(w);
                }
                match (in_x(u), in_x(v)) {
                    (true, true) => {
                        let (a, b) = (xs.iter().position(|&x| x == u).unwrap(), xs.iter().position(|&x| x == v).unwrap());
                        let idx = pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
                        mask >> idx & 1 == 1
                    }
                    _ => true,
                }
            });
            if !meets_tightness(&g, target) {
                continue;
            }
            report.oracle_calls += 1;
            match exact_square_ham_cycle(&g, budget).map_err(|e| Precondition::new(e.to_string()))? {
                SearchOutcome::NotExists => {
                    report.outcome = "found";
                    report.graph = Some(g);
                    return Ok(report);
                }
                SearchOutcome::BudgetExhausted => exhausted = true,
                SearchOutcome::Found(_) => {}
            }
        }
    }
    if exhausted {
        report.outcome = "budget_exhausted";
    }
    Ok(report)
}

/// Exact degree equalities of the target.
pub fn meets_tightness(g: &Graph, target: Tightness) -> bool {
    let n = g.n();
    let d2 = ore_degree(g);
    match target {
        Tightness::LowVertex => d2.is_some_and(|d| 3 * d == 4 * n) && 3 * g.min_degree() == n + 6,
        Tightness::CliqueJoin => d2.is_some_and(|d| 3 * d + 2 == 4 * n),
    }
}

//! Short square paths between edges, and the cyclic chain of connectors
//! that turns a cover into one long square cycle.

use serde::Serialize;

use super::cover::Cover;
use super::{Inequality, NonExtremalError, Relation};
use crate::error::Precondition;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::measures::{density, density_within, low_degree_bitset};
use crate::params::{int, CONNECT_CLASS_FLOOR};
use crate::verify::{square_path_violation, verify_square_path, Tripartite};
use crate::{Parameters, Rational};

/// Longest middle part a connector may have.
pub const MAX_Q: usize = 18;

/// Cap on first-vertex choices in the nested middle searches.
const FAN: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FourOrFive {
    /// `x₃x₁x₂y₁y₂y₃` is a square path.
    SquarePath([Vertex; 6]),
    /// `x₁ ≁ y₁` and `x₂ ≁ y₂`.
    NonEdgePairs((Vertex, Vertex), (Vertex, Vertex)),
}

impl FourOrFive {
    /// Whether the branch really holds in `g` for the triangles `t`, `t2`.
    pub fn holds(&self, g: &Graph, t: [Vertex; 3], t2: [Vertex; 3]) -> bool {
        match *self {
            FourOrFive::SquarePath(p) => {
                verify_square_path(g, &p) && p[..3].iter().all(|v| t.contains(v)) && p[3..].iter().all(|v| t2.contains(v))
            }
            FourOrFive::NonEdgePairs((x1, y1), (x2, y2)) => {
                x1 != x2
                    && y1 != y2
                    && [x1, x2].iter().all(|v| t.contains(v))
                    && [y1, y2].iter().all(|v| t2.contains(v))
                    && !g.adjacent(x1, y1)
                    && !g.adjacent(x2, y2)
            }
        }
    }
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Between two disjoint triangles there is either a square path order or
/// two disjoint non-adjacent cross pairs. Labelings are scanned in
/// lexicographic order and the square path is preferred.
pub fn four_or_five(g: &Graph, t: [Vertex; 3], t2: [Vertex; 3]) -> Result<FourOrFive, Precondition> {
    let tri = |x: [Vertex; 3]| g.adjacent(x[0], x[1]) && g.adjacent(x[1], x[2]) && g.adjacent(x[0], x[2]);
    if !tri(t) || !tri(t2) {
        return Err(Precondition::new("both arguments must be triangles"));
    }
    if t.iter().any(|v| t2.contains(v)) {
        return Err(Precondition::new("triangles must be disjoint"));
    }
    for p in PERMS {
        for q in PERMS {
            let (x, y) = ([t[p[0]], t[p[1]], t[p[2]]], [t2[q[0]], t2[q[1]], t2[q[2]]]);
            let seq = [x[2], x[0], x[1], y[0], y[1], y[2]];
            if verify_square_path(g, &seq) {
                return Ok(FourOrFive::SquarePath(seq));
            }
        }
    }
    for p in PERMS {
        for q in PERMS {
            let (x1, x2, y1, y2) = (t[p[0]], t[p[1]], t2[q[0]], t2[q[1]]);
            if !g.adjacent(x1, y1) && !g.adjacent(x2, y2) {
                return Ok(FourOrFive::NonEdgePairs((x1, y1), (x2, y2)));
            }
        }
    }
    unreachable!("cross pattern between {t:?} and {t2:?} admits neither branch")
}

/// `u₁u₂Qv₁v₂` together with how it was found.
#[derive(Debug, Clone, Serialize)]
pub struct ConnectPath {
    pub path: Vec<Vertex>,
    pub case: &'static str,
    /// Degree-sum bound checked on the non-edge pairs, when that branch ran.
    pub degree_sum: Option<Inequality>,
}

impl ConnectPath {
    pub fn q(&self) -> &[Vertex] {
        &self.path[2..self.path.len() - 2]
    }
}

/// One side of a connector under construction: the anchor edge plus the
/// vertices already committed, and alternative endings whose last two
/// vertices the middle part has to attach to.
#[derive(Debug, Clone)]
struct Side {
    base: Vec<Vertex>,
    tails: Vec<Vec<Vertex>>,
    supported: bool,
    triangle: Option<[Vertex; 3]>,
}

impl Side {
    fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.base[2..].iter().chain(self.tails.iter().flatten()).copied()
    }
}

fn triangle_orders(base: Vec<Vertex>, t: [Vertex; 3]) -> Side {
    let tails = PERMS.iter().map(|p| vec![t[p[0]], t[p[1]], t[p[2]]]).collect();
    Side { base, tails, supported: true, triangle: Some(t) }
}

fn pair_orders(prefix: &[Vertex], a: Vertex, b: Vertex) -> Vec<Vec<Vertex>> {
    [[a, b], [b, a]].iter().map(|p| prefix.iter().copied().chain(p.iter().copied()).collect()).collect()
}

/// Lowest triangle inside `set`, in lexicographic order.
fn first_triangle(g: &Graph, set: &VertexSet) -> Option<[Vertex; 3]> {
    for a in set.iter() {
        let na = g.neighbor_set(a).intersection(set);
        for b in na.iter().filter(|&b| b > a) {
            if let Some(c) = g.neighbor_set(b).intersection(&na).iter().find(|&c| c > b) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

fn common(g: &Graph, vs: &[Vertex], within: &VertexSet) -> VertexSet {
    let mut s = within.clone();
    for &v in vs {
        s.intersect_with(g.neighbor_set(v));
    }
    s
}

struct Ctx<'a> {
    g: &'a Graph,
    low: VertexSet,
    high_bound: Rational,
}

impl Ctx<'_> {
    fn high(&self, v: Vertex) -> bool {
        int(self.g.degree(v)) >= self.high_bound
    }

    /// Triangle in the common neighbourhood of the anchor, or the edge
    /// extensions through `N(·,·)∖L` when there is none.
    fn acquire(&self, a: Vertex, b: Vertex, avail: &VertexSet, deepest: &mut &'static str) -> Result<Side, NonExtremalError> {
        let g = self.g;
        let nab = common(g, &[a, b], avail);
        if let Some(t) = first_triangle(g, &nab) {
            return Ok(triangle_orders(vec![a, b], t));
        }
        if !(self.high(a) && self.high(b)) {
            return Err(NonExtremalError::Hypothesis(format!(
                "{a}{b}: no triangle in the common neighbourhood and a degree below {}",
                self.high_bound
            )));
        }
        *deepest = "edge extension";
        let Some((x1, x2)) = g.first_edge_in(&nab.difference(&self.low)) else {
            return Err(NonExtremalError::ConnectorExhausted { pair: None, deepest: "no edge in the common neighbourhood" });
        };
        let mut rest = avail.clone();
        rest.remove(x1);
        rest.remove(x2);
        let nx = common(g, &[x1, x2], &rest);
        if let Some(t) = first_triangle(g, &nx) {
            return Ok(triangle_orders(vec![a, b, x1, x2], t));
        }
        let mut tails = pair_orders(&[], x1, x2);
        if let Some((y1, y2)) = g.first_edge_in(&nx.difference(&self.low)) {
            let mut rest2 = rest.clone();
            rest2.remove(y1);
            rest2.remove(y2);
            if let Some(t) = first_triangle(g, &common(g, &[y1, y2], &rest2)) {
                return Ok(triangle_orders(vec![a, b, x1, x2, y1, y2], t));
            }
            for second in [[x1, x2], [x2, x1]] {
                tails.extend(pair_orders(&second, y1, y2));
            }
        }
        Ok(Side { base: vec![a, b], tails, supported: false, triangle: None })
    }
}

/// Square path `u₁u₂Qv₁v₂` with `|Q| ≤ 18` avoiding `forbidden`.
///
/// Tries, in order: a direct middle of two or three vertices; a supporting
/// triangle at each end (or the edge extensions when an end has none)
/// joined directly; the non-edge-pair analysis with middles of one to
/// three vertices; and the four-vertex bridge through edges inside `A`
/// and `B`. Every returned path is verified.
pub fn connect_edges(
    g: &Graph,
    (u1, u2): (Vertex, Vertex),
    (v1, v2): (Vertex, Vertex),
    forbidden: &VertexSet,
    params: &Parameters,
) -> Result<ConnectPath, NonExtremalError> {
    let ends = [u1, u2, v1, v2];
    if ends.iter().any(|&x| x >= g.n()) {
        return Err(Precondition::new("endpoint out of range").into());
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if ends[i] == ends[j] {
                return Err(Precondition::new("endpoints must be distinct").into());
            }
        }
    }
    if !g.adjacent(u1, u2) || !g.adjacent(v1, v2) {
        return Err(Precondition::new("u₁u₂ and v₁v₂ must be edges").into());
    }
    let n = g.n();
    let mut avail = g.vertex_set().difference(forbidden);
    for v in ends {
        avail.remove(v);
    }
    let ctx = Ctx {
        g,
        low: low_degree_bitset(g, params.eps),
        high_bound: (Rational::new(2, 3) - Rational::from_integer(2) * params.eps) * int(n),
    };
    let finish = |seq: Vec<Vertex>, case: &'static str, degree_sum: Option<Inequality>| -> Option<ConnectPath> {
        let qlen = seq.len().checked_sub(4)?;
        (qlen <= MAX_Q && square_path_violation(g, &seq).is_none()).then_some(ConnectPath { path: seq, case, degree_sum })
    };

    for (a, b) in [(u1, u2), (v1, v2)] {
        if !(ctx.high(a) && ctx.high(b)) && first_triangle(g, &common(g, &[a, b], &avail)).is_none() {
            return Err(NonExtremalError::Hypothesis(format!(
                "{a}{b}: a degree is below {} and the common neighbourhood holds no triangle",
                ctx.high_bound
            )));
        }
    }

    // A middle of two or three vertices straight from the anchors.
    for k in 2..=3 {
        if let Some(m) = middle(g, (u1, u2), (v1, v2), &avail, k) {
            let seq = [u1, u2].into_iter().chain(m).chain([v1, v2]).collect();
            if let Some(p) = finish(seq, "shortcut", None) {
                return Ok(p);
            }
        }
    }

    let mut deepest = "triangle acquisition";
    let left = ctx.acquire(u1, u2, &avail, &mut deepest)?;
    let mut avail_r = avail.clone();
    for v in left.vertices() {
        avail_r.remove(v);
    }
    let right = match ctx.acquire(v2, v1, &avail_r, &mut deepest) {
        Ok(r) => r,
        // The right triangle may have to share vertices with the left one.
        Err(NonExtremalError::ConnectorExhausted { .. }) | Err(NonExtremalError::Hypothesis(_))
            if ctx.acquire(v2, v1, &avail, &mut deepest).is_ok() =>
        {
            ctx.acquire(v2, v1, &avail, &mut deepest)?
        }
        Err(e) => return Err(e),
    };
    let mut mid = avail.clone();
    for v in left.vertices().chain(right.vertices()) {
        mid.remove(v);
    }
    let assemble = |lt: &[Vertex], m: &[Vertex], rt: &[Vertex]| -> Vec<Vertex> {
        let mut seq = left.base.clone();
        seq.extend_from_slice(lt);
        seq.extend_from_slice(m);
        seq.extend(rt.iter().rev());
        seq.extend(right.base.iter().rev());
        seq
    };
    let ends_of = |t: &[Vertex]| (t[t.len() - 2], t[t.len() - 1]);

    // Shared edge or shared vertex between the two triangles.
    if let (Some(t), Some(t2)) = (left.triangle, right.triangle) {
        let shared: Vec<Vertex> = t.iter().copied().filter(|v| t2.contains(v)).collect();
        if !shared.is_empty() {
            let others_l: Vec<Vertex> = t.iter().copied().filter(|v| !shared.contains(v)).collect();
            let others_r: Vec<Vertex> = t2.iter().copied().filter(|v| !shared.contains(v)).collect();
            let mut cands: Vec<Vec<Vertex>> = Vec::new();
            if shared.len() >= 2 {
                cands.push(vec![shared[0], shared[1]]);
                cands.push(vec![shared[1], shared[0]]);
            }
            for &x in &others_l {
                for &z in &shared {
                    for &y in &others_r {
                        cands.push(vec![x, z, y]);
                    }
                }
            }
            for q in cands {
                let mut seq = left.base.clone();
                seq.extend(&q);
                seq.extend(right.base.iter().rev());
                if let Some(p) = finish(seq, "shared vertices", None) {
                    return Ok(p);
                }
            }
        }
    }

    // Direct junction of the two ends.
    for lt in &left.tails {
        for rt in &right.tails {
            if let Some(p) = finish(assemble(lt, &[], rt), "triangle junction", None) {
                return Ok(p);
            }
        }
    }

    // Non-edge pairs maximizing the common neighbourhood C.
    deepest = "common neighbourhood";
    let labeled = best_pairs(g, &left, &right, &mid);
    let mut degree_sum = None;
    let mut sets = None;
    if let Some(((x1, y1), (x2, y2))) = labeled {
        let deg: usize = [x1, y1, x2, y2].iter().map(|&v| g.degree(v)).sum();
        let bound = (Rational::from_integer(8) / Rational::from_integer(3) - Rational::from_integer(8) * params.eps) * int(n);
        let exempt = [x1, y1, x2, y2].iter().any(|&v| ctx.low.contains(v));
        if !exempt {
            degree_sum = Some(Inequality::new("deg({x1,y1,x2,y2}) ≥ (8/3 − 8ε)n", int(deg), Relation::Ge, bound));
        }
        sets = Some(abc(g, (x1, x2), (y1, y2), &mid));
    }

    // Middles of one to three vertices between every pair of endings.
    for (k, name) in [(1, "short middle"), (2, "short middle"), (3, "three-vertex middle")] {
        deepest = name;
        for lt in &left.tails {
            for rt in &right.tails {
                let (p, q) = ends_of(lt);
                let (s, r) = ends_of(rt);
                if let Some(m) = middle(g, (p, q), (r, s), &mid, k) {
                    if let Some(p) = finish(assemble(lt, &m, rt), name, degree_sum.clone()) {
                        return Ok(p);
                    }
                }
            }
        }
        if k == 2 {
            deepest = "edges inside A and B";
            if let Some((a, b, _)) = &sets {
                if let Some(p) = bridge_through_dense_halves(g, &left, &right, a, b, &mid, &assemble, &finish, degree_sum.clone()) {
                    return Ok(p);
                }
            }
        }
    }
    if let Some((a, b, c)) = &sets {
        let dead = |x: &VertexSet, y: &VertexSet| density(g, x, y).map_or(true, |d| d == Rational::from_integer(0));
        let independent = density_within(g, c).map_or(true, |d| d == Rational::from_integer(0)) && dead(b, c) && dead(a, c) && dead(a, b);
        deepest = if !independent {
            "edges touching C"
        } else if density_within(g, a).is_ok_and(|d| d > Rational::from_integer(0))
            && density_within(g, b).is_ok_and(|d| d > Rational::from_integer(0))
        {
            "edges inside A and B"
        } else if left.supported || right.supported {
            "supported ends, A or B independent"
        } else {
            "unsupported ends, A or B independent"
        };
    }
    Err(NonExtremalError::ConnectorExhausted { pair: None, deepest })
}

/// Middle `M` of exactly `k ≤ 3` vertices from `within` making
/// `p q M r s` a square path, given `p ~ q` and `r ~ s`.
fn middle(g: &Graph, (p, q): (Vertex, Vertex), (r, s): (Vertex, Vertex), within: &VertexSet, k: usize) -> Option<Vec<Vertex>> {
    let adj = |a, b| g.adjacent(a, b);
    match k {
        0 => (adj(p, r) && adj(q, r) && adj(q, s)).then(Vec::new),
        1 => {
            if !adj(q, r) {
                return None;
            }
            common(g, &[p, q, r, s], within).first().map(|z| vec![z])
        }
        2 => {
            for z1 in common(g, &[p, q, r], within).iter() {
                let mut w = within.clone();
                w.remove(z1);
                if let Some(z2) = common(g, &[q, z1, r, s], &w).first() {
                    return Some(vec![z1, z2]);
                }
            }
            None
        }
        3 => {
            for z1 in common(g, &[p, q], within).iter().take(FAN) {
                let mut w = within.clone();
                w.remove(z1);
                for z2 in common(g, &[q, z1, r], &w).iter().take(FAN) {
                    let mut w2 = w.clone();
                    w2.remove(z2);
                    if let Some(z3) = common(g, &[z1, z2, r, s], &w2).first() {
                        return Some(vec![z1, z2, z3]);
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Disjoint non-adjacent pairs `(x₁,y₁)`, `(x₂,y₂)` between the two end
/// triangles (or end edges) maximizing `|C₁,₂|`; the first maximum in
/// lexicographic order is kept.
fn best_pairs(g: &Graph, left: &Side, right: &Side, mid: &VertexSet) -> Option<((Vertex, Vertex), (Vertex, Vertex))> {
    let pool = |s: &Side| -> Vec<Vertex> {
        match s.triangle {
            Some(t) => t.to_vec(),
            None => {
                let t = &s.tails[0];
                vec![t[t.len() - 2], t[t.len() - 1]]
            }
        }
    };
    let (xs, ys) = (pool(left), pool(right));
    let mut best: Option<(usize, ((Vertex, Vertex), (Vertex, Vertex)))> = None;
    for &x1 in &xs {
        for &x2 in xs.iter().filter(|&&x| x > x1) {
            for &y1 in &ys {
                for &y2 in ys.iter().filter(|&&y| y != y1) {
                    if [y1, y2].contains(&x1) || [y1, y2].contains(&x2) {
                        continue;
                    }
                    if g.adjacent(x1, y1) || g.adjacent(x2, y2) {
                        continue;
                    }
                    let c = common(g, &[x1, x2, y1, y2], mid).len();
                    if best.as_ref().is_none_or(|(b, _)| c > *b) {
                        best = Some((c, ((x1, y1), (x2, y2))));
                    }
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

/// `A`: both `x`'s and exactly one `y`; `B`: the mirror; `C`: all four.
fn abc(g: &Graph, (x1, x2): (Vertex, Vertex), (y1, y2): (Vertex, Vertex), mid: &VertexSet) -> (VertexSet, VertexSet, VertexSet) {
    let (mut a, mut b, mut c) = (g.empty_set(), g.empty_set(), g.empty_set());
    for v in mid.iter() {
        let dx = usize::from(g.adjacent(v, x1)) + usize::from(g.adjacent(v, x2));
        let dy = usize::from(g.adjacent(v, y1)) + usize::from(g.adjacent(v, y2));
        match (dx, dy) {
            (2, 2) => c.insert(v),
            (2, 1) => a.insert(v),
            (1, 2) => b.insert(v),
            _ => false,
        };
    }
    (a, b, c)
}

/// `x₁x₂a₁a₂d₁d₂b₁b₂y₁y₂` through an edge in `A`, an edge in `B` and an
/// edge in their common neighbourhood.
#[allow(clippy::too_many_arguments)]
fn bridge_through_dense_halves(
    g: &Graph,
    left: &Side,
    right: &Side,
    a: &VertexSet,
    b: &VertexSet,
    mid: &VertexSet,
    assemble: &dyn Fn(&[Vertex], &[Vertex], &[Vertex]) -> Vec<Vertex>,
    finish: &dyn Fn(Vec<Vertex>, &'static str, Option<Inequality>) -> Option<ConnectPath>,
    degree_sum: Option<Inequality>,
) -> Option<ConnectPath> {
    let edges_in = |s: &VertexSet| -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in s.iter() {
            for v in g.neighbor_set(u).intersection(s).iter().filter(|&v| v > u) {
                out.push((u, v));
                if out.len() >= FAN {
                    return out;
                }
            }
        }
        out
    };
    for (a1, a2) in edges_in(a) {
        for (b1, b2) in edges_in(b) {
            if [b1, b2].contains(&a1) || [b1, b2].contains(&a2) {
                continue;
            }
            let mut w = mid.clone();
            for v in [a1, a2, b1, b2] {
                w.remove(v);
            }
            let d = common(g, &[a1, a2, b1, b2], &w);
            let Some((d1, d2)) = g.first_edge_in(&d) else { continue };
            for (p, q) in [(a1, a2), (a2, a1)] {
                for (r, s) in [(b1, b2), (b2, b1)] {
                    let m = [p, q, d1, d2, r, s];
                    for lt in &left.tails {
                        for rt in &right.tails {
                            if let Some(path) = finish(assemble(lt, &m, rt), "edges inside A and B", degree_sum.clone()) {
                                return Some(path);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// `Pᵢ = u₁u₂u₃Qv₁v₂v₃` from block `from` to block `to`.
#[derive(Debug, Clone, Serialize)]
pub struct Connector {
    pub from: usize,
    pub to: usize,
    pub path: Vec<Vertex>,
    pub case: &'static str,
}

impl Connector {
    pub fn u(&self) -> [Vertex; 3] {
        [self.path[0], self.path[1], self.path[2]]
    }

    pub fn v(&self) -> [Vertex; 3] {
        let k = self.path.len();
        [self.path[k - 3], self.path[k - 2], self.path[k - 1]]
    }

    pub fn q(&self) -> &[Vertex] {
        &self.path[3..self.path.len() - 3]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectedCover {
    pub s: usize,
    /// Cyclically ordered; connector `i` runs from block `i` to block `i+1`.
    pub blocks: Vec<Tripartite>,
    pub connectors: Vec<Connector>,
    /// Every connector vertex.
    pub forbidden: Vec<Vertex>,
    /// Vertices in neither a block nor a connector.
    pub uncovered: Vec<Vertex>,
    /// Blocks closed to connector middles after losing half a class.
    pub closed_blocks: Vec<usize>,
    pub diagnostics: Vec<Inequality>,
}

impl ConnectedCover {
    pub fn max_q(&self) -> usize {
        self.connectors.iter().map(|c| c.q().len()).max().unwrap_or(0)
    }

    /// Blocks complete and balanced, endpoints in the right classes,
    /// middles short and off the blocks, everything pairwise disjoint and
    /// spanning.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let m = self.blocks.len();
        let mut owner = vec![usize::MAX; g.n()];
        for (i, b) in self.blocks.iter().enumerate() {
            if !b.is_complete_in(g) || !b.is_balanced() {
                return Err(format!("block {i} is not balanced complete tripartite"));
            }
            for v in b.vertices() {
                owner[v] = i;
            }
        }
        let mut seen = vec![false; g.n()];
        for (i, c) in self.connectors.iter().enumerate() {
            if c.from != i || c.to != (i + 1) % m {
                return Err(format!("connector {i} is out of order"));
            }
            if !verify_square_path(g, &c.path) {
                return Err(format!("connector {i} is not a square path"));
            }
            if c.q().len() > MAX_Q {
                return Err(format!("connector {i} has |Q| = {}", c.q().len()));
            }
            for (h, (&u, &v)) in c.u().iter().zip(c.v().iter()).enumerate() {
                if !self.blocks[c.from].parts[h].contains(&u) || !self.blocks[c.to].parts[h].contains(&v) {
                    return Err(format!("connector {i} endpoints are not class-aligned"));
                }
            }
            if c.q().iter().any(|&x| owner[x] != usize::MAX) {
                return Err(format!("connector {i} middle meets a block"));
            }
            for &x in &c.path {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(format!("vertex {x} is on two connectors"));
                }
            }
        }
        for &x in &self.uncovered {
            if owner[x] != usize::MAX || std::mem::replace(&mut seen[x], true) {
                return Err(format!("uncovered vertex {x} is also used"));
            }
        }
        for x in 0..g.n() {
            if !seen[x] && owner[x] == usize::MAX {
                return Err(format!("vertex {x} is lost"));
            }
        }
        Ok(())
    }
}

/// Endpoint in `class` not in `taken`, outside `L` if possible; lowest id.
fn pick(class: &[Vertex], taken: &VertexSet, low: &VertexSet) -> Option<Vertex> {
    let free = || class.iter().copied().filter(|&v| !taken.contains(v));
    free().find(|&v| !low.contains(v)).or_else(|| free().next())
}

/// Links the blocks in their given order by vertex-disjoint connectors.
///
/// Middles are first sought among the uncovered vertices; failing that
/// they may use block vertices, which are then removed from their blocks.
/// A block that loses more than half a class to middles is closed to later
/// middles. Classes are finally trimmed back to balance, and the trimmed
/// vertices join the uncovered pool.
pub fn connect_cover(g: &Graph, cover: &Cover, params: &Parameters) -> Result<ConnectedCover, NonExtremalError> {
    let m = cover.blocks.len();
    if m == 0 {
        return Err(Precondition::new("cover has no blocks").into());
    }
    if params.enforce_connect_floor {
        if let Some(b) = cover.blocks.iter().find(|b| b.min_class() < CONNECT_CLASS_FLOOR) {
            return Err(Precondition::new(format!("block class of size {} is below {CONNECT_CLASS_FLOOR}", b.min_class())).into());
        }
    }
    let n = g.n();
    let low = low_degree_bitset(g, params.eps);
    let mut owner = vec![usize::MAX; n];
    for (i, b) in cover.blocks.iter().enumerate() {
        for v in b.vertices() {
            owner[v] = i;
        }
    }
    let mut taken = g.empty_set();
    let mut lost = vec![0usize; m];
    let mut closed = vec![false; m];
    let mut connectors = Vec::with_capacity(m);
    let uncovered = g.set_of(cover.uncovered.iter().chain(&cover.forbidden).copied());
    for i in 0..m {
        let j = (i + 1) % m;
        let (bi, bj) = (&cover.blocks[i], &cover.blocks[j]);
        let mut endpoint = |class: &[Vertex], prefer_high: bool| -> Result<Vertex, NonExtremalError> {
            let empty = g.empty_set();
            let v = pick(class, &taken, if prefer_high { &low } else { &empty }).ok_or(NonExtremalError::Rebalance {
                block: i,
                detail: "no free endpoint left in a class".into(),
            })?;
            taken.insert(v);
            Ok(v)
        };
        let u1 = endpoint(&bi.parts[0], false)?;
        let u2 = endpoint(&bi.parts[1], true)?;
        let u3 = endpoint(&bi.parts[2], true)?;
        let v1 = endpoint(&bj.parts[0], true)?;
        let v2 = endpoint(&bj.parts[1], true)?;
        let v3 = endpoint(&bj.parts[2], false)?;
        // Middles from the uncovered pool first, then from open blocks.
        let mut only_u = g.vertex_set().difference(&uncovered);
        only_u.union_with(&taken);
        let mut open = taken.clone();
        for v in 0..n {
            if owner[v] != usize::MAX && (closed[owner[v]] || owner[v] == i || owner[v] == j) {
                open.insert(v);
            }
        }
        let found = connect_edges(g, (u2, u3), (v1, v2), &only_u, params)
            .or_else(|_| connect_edges(g, (u2, u3), (v1, v2), &open, params))
            // A lone block, or two blocks with nothing else open, lend their
            // own vertices.
            .or_else(|e| if m <= 2 { connect_edges(g, (u2, u3), (v1, v2), &taken, params) } else { Err(e) })
            .map_err(|e| match e {
                NonExtremalError::ConnectorExhausted { deepest, .. } => {
                    NonExtremalError::ConnectorExhausted { pair: Some((i, j)), deepest }
                }
                other => other,
            })?;
        let mut path = vec![u1];
        path.extend_from_slice(&found.path);
        path.push(v3);
        for &x in &path {
            taken.insert(x);
        }
        for &x in found.q() {
            if owner[x] != usize::MAX {
                lost[owner[x]] += 1;
                if 2 * lost[owner[x]] > cover.s {
                    closed[owner[x]] = true;
                }
            }
        }
        connectors.push(Connector { from: i, to: j, path, case: found.case });
    }

    // Remove middle vertices from blocks and trim classes to balance.
    let in_q = g.set_of(connectors.iter().flat_map(|c| c.q().to_vec()));
    let endpoints = g.set_of(connectors.iter().flat_map(|c| c.u().into_iter().chain(c.v())));
    let mut pool = uncovered.difference(&in_q);
    let mut blocks = Vec::with_capacity(m);
    for (i, b) in cover.blocks.iter().enumerate() {
        let parts = b.parts.clone().map(|p| p.into_iter().filter(|&v| !in_q.contains(v)).collect::<Vec<_>>());
        let k = parts.iter().map(Vec::len).min().unwrap_or(0);
        let mut out: [Vec<Vertex>; 3] = Default::default();
        for (h, p) in parts.into_iter().enumerate() {
            // Endpoints are always kept; surplus leaves from the top ids.
            let (mut keep, rest): (Vec<Vertex>, Vec<Vertex>) = p.into_iter().partition(|&v| endpoints.contains(v));
            if keep.len() > k {
                return Err(NonExtremalError::Rebalance { block: i, detail: format!("class {h} keeps fewer than its endpoints") });
            }
            let spare = k - keep.len();
            keep.extend(rest.iter().copied().take(spare));
            for &v in &rest[spare.min(rest.len())..] {
                pool.insert(v);
            }
            out[h] = keep;
        }
        blocks.push(Tripartite::new(out));
    }
    let forbidden: Vec<Vertex> = taken.to_vec();
    let mut diagnostics = vec![Inequality::new(
        "forbidden ≤ 48n/s",
        int(forbidden.len()),
        Relation::Le,
        Rational::new(48 * n as i64, cover.s.max(1) as i64),
    )];
    diagnostics.push(Inequality::new("forbidden < εn", int(forbidden.len()), Relation::Lt, params.eps * int(n)));
    let remaining = g.vertex_set().difference(&taken);
    if let Some(d2) = crate::measures::induced_ore_degree(g, &remaining) {
        diagnostics.push(Inequality::new(
            "δ₂ after deletions ≥ (4/3 − 4ε)n",
            int(d2),
            Relation::Ge,
            crate::measures::ore_threshold(n, params.eps, 4),
        ));
    }
    let cc = ConnectedCover {
        s: cover.s,
        blocks,
        connectors,
        forbidden,
        uncovered: pool.to_vec(),
        closed_blocks: (0..m).filter(|&i| closed[i]).collect(),
        diagnostics,
    };
    debug_assert_eq!(cc.check(g), Ok(()));
    Ok(cc)
}

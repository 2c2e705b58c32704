//! Absorbing the vertices left outside the blocks and connectors.
//!
//! A leftover `w` with two free neighbours in every class of a block goes
//! between two class-aligned triangles of that block. When one class lacks
//! such neighbours, `w` takes that class's place in a pseudo-triangle and
//! the block is rebalanced, either through an edge inside the short class
//! or by sending one of its vertices back to the queue.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::connect::ConnectedCover;
use super::NonExtremalError;
use crate::error::Precondition;
use crate::extremal::{Segment, Triangle};
use crate::graph::{Graph, Vertex};
use crate::params::{floor_usize, int};
use crate::verify::{verify_square_path, Tripartite};
use crate::{Parameters, Rational};

/// Most triangles a single insertion may block.
pub const TRIANGLE_CAP: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct InsertionRecord {
    pub vertex: Vertex,
    pub block: usize,
    pub segments: Vec<Segment>,
    /// Head and tail triangles of the segments; for the plain insertion
    /// these are two disjoint triangles inside `N(w)`.
    pub blocked: Vec<Triangle>,
    /// Block vertices consumed, in triangles.
    pub triangles: usize,
    pub kind: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct InsertionState {
    pub assignment: BTreeMap<Vertex, usize>,
    pub counts: Vec<usize>,
    pub records: Vec<InsertionRecord>,
    /// Block vertices sent back to the queue while rebalancing.
    pub kicked: Vec<Vertex>,
    pub freeze_at: usize,
    pub block_cap: usize,
    pub max_triangles: usize,
}

impl InsertionState {
    pub fn blocked(&self) -> impl Iterator<Item = &Triangle> {
        self.records.iter().flat_map(|r| r.blocked.iter())
    }

    /// Segments inserted into `block`, in insertion order.
    pub fn segments(&self, block: usize) -> Vec<Segment> {
        self.records.iter().filter(|r| r.block == block).flat_map(|r| r.segments.iter().cloned()).collect()
    }
}

struct Free {
    parts: [Vec<Vertex>; 3],
}

impl Free {
    fn nbrs(&self, g: &Graph, w: Vertex, h: usize) -> Vec<Vertex> {
        self.parts[h].iter().copied().filter(|&x| g.adjacent(w, x)).take(2).collect()
    }

    fn take(&mut self, used: &[Vertex]) {
        for p in self.parts.iter_mut() {
            p.retain(|v| !used.contains(v));
        }
    }

    /// First free vertices of class `h` not in `avoid`.
    fn any(&self, h: usize, k: usize, avoid: &[Vertex]) -> Option<Vec<Vertex>> {
        let v: Vec<Vertex> = self.parts[h].iter().copied().filter(|x| !avoid.contains(x)).take(k).collect();
        (v.len() == k).then_some(v)
    }
}

/// Inserts every leftover vertex into some block. Returns the blocks
/// reduced to their still-unused vertices (connector endpoints excluded)
/// and the insertion bookkeeping.
pub fn insert_leftovers(
    g: &Graph,
    cc: &ConnectedCover,
    params: &Parameters,
) -> Result<(Vec<Tripartite>, InsertionState), NonExtremalError> {
    let n = g.n();
    let m = cc.blocks.len();
    if m == 0 {
        return Err(Precondition::new("no blocks to insert into").into());
    }
    let limit = Rational::from_integer(2) * params.eta * int(n);
    if int(cc.uncovered.len()) > limit {
        return Err(Precondition::new(format!("{} leftovers exceed 2ηn = {limit}", cc.uncovered.len())).into());
    }
    let cube = Parameters::root(params.eta, 3, true);
    let freeze_at = floor_usize(cube * int(cc.s)).max(1);
    let block_cap = floor_usize(limit / (int(m) * Parameters::root(params.eta, 3, false))).max(1);
    let mut free: Vec<Free> = Vec::with_capacity(m);
    for (i, b) in cc.blocks.iter().enumerate() {
        let prev = &cc.connectors[(i + m - 1) % m];
        let own = &cc.connectors[i];
        let ends: Vec<Vertex> = prev.v().into_iter().chain(own.u()).collect();
        free.push(Free { parts: b.parts.clone().map(|p| p.into_iter().filter(|v| !ends.contains(v)).collect()) });
    }
    let mut state = InsertionState {
        assignment: BTreeMap::new(),
        counts: vec![0; m],
        records: Vec::new(),
        kicked: Vec::new(),
        freeze_at,
        block_cap,
        max_triangles: 0,
    };
    let mut queue: VecDeque<Vertex> = cc.uncovered.iter().copied().collect();
    let kick_budget = 2 * cc.uncovered.len() + m;
    while let Some(w) = queue.pop_front() {
        let mut order: Vec<usize> = (0..m).filter(|&i| state.counts[i] < freeze_at.min(block_cap)).collect();
        order.sort_by_key(|&i| (state.counts[i], i));
        let mut trace = Vec::new();
        let mut done = None;
        for &i in &order {
            if let Some(rec) = easy(g, w, i, &free[i]) {
                done = Some((rec, None));
                break;
            }
        }
        if done.is_none() {
            trace.push(format!("no open block gives two neighbours in every class ({} open)", order.len()));
            'blocks: for &i in &order {
                for h in 0..3 {
                    let Some(mut rec) = pseudo(g, w, i, h, &free[i]) else { continue };
                    let used: Vec<Vertex> = rec.segments.iter().flat_map(|s| s.0.iter().copied()).filter(|&v| v != w).collect();
                    let mut after = Free { parts: free[i].parts.clone() };
                    after.take(&used);
                    if let Some(extra) = in_class_edge(g, h, &after) {
                        rec.triangles += extra.0.len() / 3;
                        rec.blocked.push(extra.head());
                        rec.blocked.push(extra.tail());
                        rec.segments.push(extra);
                        rec.kind = "pseudo-triangle with in-class edge";
                        done = Some((rec, None));
                        break 'blocks;
                    }
                    if state.kicked.len() < kick_budget {
                        let kick = after.parts[h].iter().copied().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
                        if let Some(k) = kick {
                            rec.kind = "pseudo-triangle with kick";
                            done = Some((rec, Some(k)));
                            break 'blocks;
                        }
                    }
                    trace.push(format!("block {i}: class {h} cannot be rebalanced"));
                }
            }
        }
        let Some((rec, kick)) = done else {
            trace.push("every open block refused".into());
            return Err(NonExtremalError::Insertion { vertex: w, trace });
        };
        if rec.triangles > TRIANGLE_CAP {
            return Err(NonExtremalError::Insertion { vertex: w, trace: vec![format!("{} triangles exceed the cap", rec.triangles)] });
        }
        let i = rec.block;
        let used: Vec<Vertex> = rec.segments.iter().flat_map(|s| s.0.iter().copied()).filter(|&v| v != w).collect();
        free[i].take(&used);
        if let Some(k) = kick {
            free[i].take(&[k]);
            state.kicked.push(k);
            queue.push_back(k);
        }
        state.assignment.insert(w, i);
        state.counts[i] += 1;
        state.max_triangles = state.max_triangles.max(rec.triangles);
        state.records.push(rec);
    }
    let rest = free.into_iter().map(|f| Tripartite::new(f.parts)).collect::<Vec<_>>();
    if let Some(i) = rest.iter().position(|b| !b.is_balanced()) {
        return Err(NonExtremalError::Rebalance { block: i, detail: "unbalanced after insertion".into() });
    }
    Ok((rest, state))
}

fn record(g: &Graph, w: Vertex, block: usize, seq: Vec<Vertex>, kind: &'static str) -> Option<InsertionRecord> {
    if !verify_square_path(g, &seq) {
        return None;
    }
    let seg = Segment(seq);
    let triangles = (seg.0.len() - 1).div_ceil(3);
    Some(InsertionRecord { vertex: w, block, blocked: vec![seg.head(), seg.tail()], segments: vec![seg], triangles, kind })
}

/// `x₁x₂x₃wy₁y₂y₃`.
fn easy(g: &Graph, w: Vertex, block: usize, f: &Free) -> Option<InsertionRecord> {
    let nb: Vec<Vec<Vertex>> = (0..3).map(|h| f.nbrs(g, w, h)).collect();
    if nb.iter().any(|x| x.len() < 2) {
        return None;
    }
    let seq = vec![nb[0][0], nb[1][0], nb[2][0], w, nb[0][1], nb[1][1], nb[2][1]];
    record(g, w, block, seq, "plain")
}

/// `w` stands in for class `h`, which has too few neighbours of `w`.
fn pseudo(g: &Graph, w: Vertex, block: usize, h: usize, f: &Free) -> Option<InsertionRecord> {
    let seq = match h {
        // x₁ x₂ w y₁ y₂ y₃
        2 => {
            let (a, b) = (f.nbrs(g, w, 0), f.nbrs(g, w, 1));
            if a.len() < 2 || b.len() < 2 {
                return None;
            }
            let y3 = f.any(2, 1, &[])?;
            vec![a[0], b[0], w, a[1], b[1], y3[0]]
        }
        // x₁ x₂ x₃ w y₂ y₃
        0 => {
            let (b, c) = (f.nbrs(g, w, 1), f.nbrs(g, w, 2));
            if b.len() < 2 || c.len() < 2 {
                return None;
            }
            let x1 = f.any(0, 1, &[])?;
            vec![x1[0], b[0], c[0], w, b[1], c[1]]
        }
        // x₁ x₂ x₃ y₁ w y₃ z₁ z₂ z₃
        _ => {
            let (a, c) = (f.nbrs(g, w, 0), f.nbrs(g, w, 2));
            if a.len() < 2 || c.len() < 2 {
                return None;
            }
            let x1 = f.any(0, 1, &a)?;
            let two = f.any(1, 2, &[])?;
            let z3 = f.any(2, 1, &c)?;
            vec![x1[0], two[0], c[0], a[0], w, c[1], a[1], two[1], z3[0]]
        }
    };
    record(g, w, block, seq, "pseudo-triangle")
}

/// A piece using one more vertex of class `h` than of the others, through
/// an edge inside that class.
fn in_class_edge(g: &Graph, h: usize, f: &Free) -> Option<Segment> {
    let class = &f.parts[h];
    for (i, &u) in class.iter().enumerate() {
        for &v in &class[i + 1..] {
            if !g.adjacent(u, v) {
                continue;
            }
            let seq = match h {
                2 => {
                    let (a, b) = (f.any(0, 2, &[])?, f.any(1, 2, &[])?);
                    let c = f.any(2, 1, &[u, v])?;
                    vec![a[0], b[0], u, v, a[1], b[1], c[0]]
                }
                0 => {
                    let a = f.any(0, 1, &[u, v])?;
                    let (b, c) = (f.any(1, 2, &[])?, f.any(2, 2, &[])?);
                    vec![a[0], b[0], c[0], u, v, b[1], c[1]]
                }
                _ => {
                    let a = f.any(0, 3, &[])?;
                    let b = f.any(1, 2, &[u, v])?;
                    let c = f.any(2, 3, &[])?;
                    vec![a[0], b[0], c[0], a[1], u, v, c[1], a[2], b[1], c[2]]
                }
            };
            if verify_square_path(g, &seq) {
                return Some(Segment(seq));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Block classes 0..6, 6..12, 12..18 plus extra vertices.
    fn block_free() -> Free {
        Free { parts: [(0..6).collect(), (6..12).collect(), (12..18).collect()] }
    }

    fn with_w(n: usize, w_sees: impl Fn(Vertex) -> bool, in_class: &[(Vertex, Vertex)]) -> Graph {
        let class = |v: Vertex| v / 6;
        Graph::from_fn(n, |a, b| {
            if b == 18 {
                w_sees(a)
            } else if class(a) != class(b) {
                true
            } else {
                in_class.contains(&(a, b))
            }
        })
    }

    #[test]
    fn universal_vertex_is_plain() {
        let g = with_w(19, |_| true, &[]);
        let rec = easy(&g, 18, 0, &block_free()).unwrap();
        assert_eq!(rec.kind, "plain");
        assert_eq!(rec.blocked.len(), 2);
        let [a, b] = [rec.blocked[0], rec.blocked[1]];
        assert!(a.iter().all(|v| !b.contains(v)));
        assert!(a.iter().chain(&b).all(|&v| g.adjacent(18, v)));
        assert_eq!(rec.triangles, 2);
    }

    #[test]
    fn pseudo_triangles_rebalance_through_in_class_edges() {
        for h in 0..3 {
            let lo = 6 * h;
            let g = with_w(19, |v| v / 6 != h, &[(lo + 3, lo + 4)]);
            let f = block_free();
            assert!(easy(&g, 18, 0, &f).is_none());
            let rec = pseudo(&g, 18, 0, h, &f).unwrap_or_else(|| panic!("pseudo-triangle for class {h}"));
            let used: Vec<Vertex> = rec.segments[0].0.iter().copied().filter(|&v| v != 18).collect();
            let mut after = Free { parts: f.parts.clone() };
            after.take(&used);
            let extra = in_class_edge(&g, h, &after).unwrap();
            assert!(verify_square_path(&g, &extra.0));
            after.take(&extra.0);
            let sizes: Vec<usize> = after.parts.iter().map(Vec::len).collect();
            assert!(sizes.iter().all(|&s| s == sizes[0]), "class {h}: {sizes:?}");
        }
    }

    #[test]
    fn no_in_class_edge_means_no_rebalancing_piece() {
        let g = with_w(19, |v| v / 6 != 2, &[]);
        assert!(in_class_edge(&g, 2, &block_free()).is_none());
    }
}

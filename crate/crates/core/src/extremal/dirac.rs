//! Hamiltonian cycles and paths under Dirac/Ore-type degree conditions.
//!
//! Start from any cyclic order and repair gaps (consecutive non-adjacent
//! pairs) one at a time: for a gap `vᵢvᵢ₊₁` pick `j` with `vᵢ ~ vⱼ` and
//! `vᵢ₊₁ ~ vⱼ₊₁`, then reverse `vᵢ₊₁…vⱼ`. Each step removes at least one gap,
//! and `deg(vᵢ) + deg(vᵢ₊₁) ≥ m` guarantees such a `j`.

use crate::error::{DiracError, Precondition};
use crate::graph::{Graph, Vertex};

/// Closes the cyclic order `order` into a Hamiltonian cycle of `g`. When
/// `keep` is given and adjacent in `order`, that pair stays consecutive.
pub fn rotate_to_cycle(g: &Graph, mut order: Vec<Vertex>, keep: Option<(Vertex, Vertex)>) -> Result<Vec<Vertex>, DiracError> {
    let m = order.len();
    if m < 3 {
        return Err(Precondition::new(format!("a cycle needs at least 3 vertices, got {m}")).into());
    }
    let is_keep = |a: Vertex, b: Vertex| keep.is_some_and(|(x, y)| (a == x && b == y) || (a == y && b == x));
    let linked = |a, b| g.adjacent(a, b) || is_keep(a, b);
    loop {
        let gap = (0..m).find(|&i| !linked(order[i], order[(i + 1) % m]));
        let Some(i) = gap else { return Ok(order) };
        order.rotate_left(i);
        let (v0, v1) = (order[0], order[1]);
        let j = (2..m - 1).find(|&j| {
            g.adjacent(v0, order[j]) && g.adjacent(v1, order[j + 1]) && !is_keep(order[j], order[j + 1])
        });
        let Some(j) = j else {
            return Err(Precondition::new(format!(
                "rotation stuck at non-adjacent pair ({v0}, {v1}) with degree sum {}",
                g.degree(v0) + g.degree(v1)
            ))
            .into());
        };
        order[1..=j].reverse();
    }
}

/// Hamiltonian cycle, requiring `δ(G) ≥ m/2` and `m ≥ 3`.
pub fn dirac_ham_cycle(g: &Graph) -> Result<Vec<Vertex>, DiracError> {
    let m = g.n();
    if m < 3 || 2 * g.min_degree() < m {
        return Err(Precondition::new(format!("need m >= 3 and min degree >= m/2 (m = {m}, min degree {})", g.min_degree())).into());
    }
    let c = rotate_to_cycle(g, (0..m).collect(), None)?;
    debug_assert!(is_ham_cycle(g, &c));
    Ok(c)
}

/// Hamiltonian `a–b` path, requiring `δ(G) > m/2`.
pub fn dirac_ham_path(g: &Graph, a: Vertex, b: Vertex) -> Result<Vec<Vertex>, DiracError> {
    let m = g.n();
    if a >= m || b >= m || a == b {
        return Err(Precondition::new(format!("endpoints {a}, {b} must be distinct vertices")).into());
    }
    if m == 2 {
        return if g.adjacent(a, b) { Ok(vec![a, b]) } else { Err(Precondition::new("no a-b edge").into()) };
    }
    if 2 * g.min_degree() <= m {
        return Err(Precondition::new(format!("need min degree > m/2 (m = {m}, min degree {})", g.min_degree())).into());
    }
    ore_ham_path(g, a, b)
}

/// Hamiltonian `a–b` path with no up-front degree check; fails if rotation
/// gets stuck.
pub fn ore_ham_path(g: &Graph, a: Vertex, b: Vertex) -> Result<Vec<Vertex>, DiracError> {
    let m = g.n();
    if m == 2 {
        return if g.adjacent(a, b) { Ok(vec![a, b]) } else { Err(Precondition::new("no a-b edge").into()) };
    }
    let mut order = vec![a];
    order.extend((0..m).filter(|&v| v != a && v != b));
    order.push(b);
    let mut c = rotate_to_cycle(g, order, Some((a, b)))?;
    // Cut the cycle at the kept pair so that it runs a … b.
    let pa = c.iter().position(|&v| v == a).expect("a is on the cycle");
    c.rotate_left(pa);
    if c[1] == b {
        c[1..].reverse();
    }
    debug_assert_eq!(c.last(), Some(&b));
    Ok(c)
}

pub fn is_ham_cycle(g: &Graph, c: &[Vertex]) -> bool {
    let m = g.n();
    let mut seen = vec![false; m];
    c.len() == m
        && c.iter().all(|&v| v < m && !std::mem::replace(&mut seen[v], true))
        && (0..m).all(|i| g.adjacent(c[i], c[(i + 1) % m]))
}

pub fn is_ham_path(g: &Graph, p: &[Vertex]) -> bool {
    let m = g.n();
    let mut seen = vec![false; m];
    p.len() == m
        && p.iter().all(|&v| v < m && !std::mem::replace(&mut seen[v], true))
        && p.windows(2).all(|w| g.adjacent(w[0], w[1]))
}

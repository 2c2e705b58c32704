//! Triangle covers of balanced tripartite graphs and their assembly into
//! square cycles through the good-pair graph.

use serde::Serialize;

use super::dirac::{dirac_ham_cycle, dirac_ham_path};
use super::matching::{deficient_set, max_matching, Bipartite};
use crate::error::{ExtremalError, HallError, Precondition};
use crate::graph::{Graph, Vertex};
use crate::params::int;
use crate::verify::{square_cycle_violation, square_path_violation};
use crate::Rational;

/// `(x₁, x₂, x₃)` with `xᵢ` in the i-th class.
pub type Triangle = [Vertex; 3];

/// Three classes `A₁, A₂, A₃`.
pub type Parts = [Vec<Vertex>; 3];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleCover {
    pub triangles: Vec<Triangle>,
}

/// Checks that the classes are non-empty, equal-sized, disjoint and in
/// range; returns their common size.
pub fn check_parts(h: &Graph, parts: &Parts) -> Result<usize, Precondition> {
    let m = parts[0].len();
    if m == 0 || parts.iter().any(|p| p.len() != m) {
        return Err(Precondition::new(format!(
            "classes must be non-empty and balanced, sizes {:?}",
            parts.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    let mut seen = vec![false; h.n()];
    for &v in parts.iter().flatten() {
        if v >= h.n() || std::mem::replace(&mut seen[v], true) {
            return Err(Precondition::new(format!("vertex {v} repeated or out of range")));
        }
    }
    Ok(m)
}

/// `min over i ≠ j, v ∈ Aᵢ of deg(v, Aⱼ)`.
pub fn cross_min_degree(h: &Graph, parts: &Parts) -> usize {
    let sets: Vec<_> = parts.iter().map(|p| h.set_of(p.iter().copied())).collect();
    let mut best = usize::MAX;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                for &v in &parts[i] {
                    best = best.min(h.degree_into(v, &sets[j]));
                }
            }
        }
    }
    best
}

/// Perfect triangle cover when every cross degree is at least
/// `(1−α′)m` with `α′ < 1/2`.
pub fn hall_triangle_cover(h: &Graph, parts: &Parts, alpha_prime: Rational) -> Result<TriangleCover, HallError> {
    let m = check_parts(h, parts)?;
    if alpha_prime < Rational::from_integer(0) || alpha_prime >= Rational::new(1, 2) {
        return Err(Precondition::new(format!("alpha' = {alpha_prime} must lie in [0, 1/2)")).into());
    }
    let need = (Rational::from_integer(1) - alpha_prime) * int(m);
    let have = cross_min_degree(h, parts);
    if int(have) < need {
        return Err(Precondition::new(format!("cross min degree {have} is below (1 - {alpha_prime})·{m}")).into());
    }
    triangle_cover_by_matching(h, parts)
}

/// The two-stage matching with no degree precondition: `A₁–A₂` first, then
/// the matched pairs against `A₃` through common neighbourhoods.
///
/// A stage-2 deficiency is reported by the `A₁` endpoints of the pairs.
pub fn triangle_cover_by_matching(h: &Graph, parts: &Parts) -> Result<TriangleCover, HallError> {
    let m = check_parts(h, parts)?;
    let index = |class: &Vec<Vertex>| {
        let mut at = vec![usize::MAX; h.n()];
        for (i, &v) in class.iter().enumerate() {
            at[v] = i;
        }
        at
    };
    let at2 = index(&parts[1]);
    let adj1: Vec<Vec<usize>> = parts[0]
        .iter()
        .map(|&x| h.neighbors(x).iter().filter(|&&y| at2[y] != usize::MAX).map(|&y| at2[y]).collect())
        .collect();
    let b1 = Bipartite { right: m, adj: &adj1 };
    let m1 = max_matching(&b1);
    if let Some((s, nb)) = deficient_set(&b1, &m1) {
        return Err(HallError::Deficient { stage: 1, deficient: s.iter().map(|&i| parts[0][i]).collect(), neighborhood: nb });
    }
    let pairs: Vec<(Vertex, Vertex)> =
        m1.left.iter().enumerate().map(|(i, r)| (parts[0][i], parts[1][r.expect("perfect")])).collect();
    let set3 = h.set_of(parts[2].iter().copied());
    let at3 = index(&parts[2]);
    let adj2: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(x, y)| {
            let mut c = h.neighbor_set(x).intersection(h.neighbor_set(y));
            c.intersect_with(&set3);
            let mut v: Vec<usize> = c.iter().map(|z| at3[z]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let b2 = Bipartite { right: m, adj: &adj2 };
    let m2 = max_matching(&b2);
    if let Some((s, nb)) = deficient_set(&b2, &m2) {
        return Err(HallError::Deficient { stage: 2, deficient: s.iter().map(|&i| pairs[i].0).collect(), neighborhood: nb });
    }
    let triangles = pairs
        .iter()
        .zip(&m2.left)
        .map(|(&(x, y), z)| [x, y, parts[2][z.expect("perfect")]])
        .collect();
    Ok(TriangleCover { triangles })
}

/// Triangles disjoint, spanning the classes, one vertex per class.
pub fn is_triangle_cover(h: &Graph, parts: &Parts, cover: &TriangleCover) -> bool {
    let Ok(m) = check_parts(h, parts) else { return false };
    let sets: Vec<_> = parts.iter().map(|p| h.set_of(p.iter().copied())).collect();
    let mut seen = h.empty_set();
    cover.triangles.len() == m
        && cover.triangles.iter().all(|t| {
            (0..3).all(|i| sets[i].contains(t[i]) && seen.insert(t[i]))
                && h.adjacent(t[0], t[1])
                && h.adjacent(t[1], t[2])
                && h.adjacent(t[0], t[2])
        })
}

/// `x₂ ~ y₁`, `x₃ ~ y₁`, `x₃ ~ y₂`: the junction edges that make
/// `x₁x₂x₃y₁y₂y₃` a square path.
pub fn precedes(h: &Graph, t: &Triangle, u: &Triangle) -> bool {
    h.adjacent(t[1], u[0]) && h.adjacent(t[2], u[0]) && h.adjacent(t[2], u[1])
}

/// A square-path piece at least three long whose first and last three
/// vertices are triangles with one vertex per class, in class order.
/// Plain triangles are pieces of length 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment(pub Vec<Vertex>);

impl Segment {
    pub fn head(&self) -> Triangle {
        [self.0[0], self.0[1], self.0[2]]
    }

    pub fn tail(&self) -> Triangle {
        let k = self.0.len();
        [self.0[k - 3], self.0[k - 2], self.0[k - 1]]
    }
}

impl From<Triangle> for Segment {
    fn from(t: Triangle) -> Self {
        Segment(t.to_vec())
    }
}

pub fn segment_precedes(h: &Graph, s: &Segment, u: &Segment) -> bool {
    precedes(h, &s.tail(), &u.head())
}

#[derive(Debug, Clone, Serialize)]
pub struct GoodPairGraph {
    #[serde(skip)]
    pub graph: Graph,
    pub min_degree: usize,
    pub pieces: usize,
}

/// Pieces `s ~ s′` iff each precedes the other.
pub fn build_good_pair_graph(h: &Graph, pieces: &[Segment]) -> GoodPairGraph {
    let k = pieces.len();
    let fwd: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| i != j && segment_precedes(h, &pieces[i], &pieces[j])).collect()).collect();
    let graph = Graph::from_fn(k, |i, j| fwd[i][j] && fwd[j][i]);
    GoodPairGraph { min_degree: if k == 0 { 0 } else { graph.min_degree() }, pieces: k, graph }
}

/// Lower bound on the good-pair degree of a triangle when every cross
/// degree is at least `(1−α′)m`: each of the nine junction edges excludes
/// at most `α′m` partners, and the triangle itself does not count.
pub fn good_pair_union_bound(m: usize, alpha_prime: Rational) -> Rational {
    (Rational::from_integer(1) - Rational::from_integer(9) * alpha_prime) * int(m) - Rational::from_integer(1)
}

/// Square cycle (or, with `endpoints = (first, last)` piece indices, square
/// path) through every piece, following a Hamiltonian cycle or path of the
/// good-pair graph. Verified before it is returned.
pub fn square_ham_from_cover(
    h: &Graph,
    pieces: &[Segment],
    endpoints: Option<(usize, usize)>,
) -> Result<Vec<Vertex>, ExtremalError> {
    let gp = build_good_pair_graph(h, pieces);
    let k = pieces.len();
    let order: Vec<usize> = match endpoints {
        None => match k {
            0 => return Err(Precondition::new("empty cover").into()),
            1 => {
                if !segment_precedes(h, &pieces[0], &pieces[0]) {
                    return Err(ExtremalError::Dirac { min_degree: 0, m: 1 });
                }
                vec![0]
            }
            2 => {
                if !gp.graph.adjacent(0, 1) {
                    return Err(ExtremalError::Dirac { min_degree: 0, m: 2 });
                }
                vec![0, 1]
            }
            _ => {
                if 2 * gp.min_degree < k {
                    return Err(ExtremalError::Dirac { min_degree: gp.min_degree, m: k });
                }
                dirac_ham_cycle(&gp.graph)?
            }
        },
        Some((a, b)) => {
            if k >= 3 && 2 * gp.min_degree <= k {
                return Err(ExtremalError::Dirac { min_degree: gp.min_degree, m: k });
            }
            dirac_ham_path(&gp.graph, a, b)?
        }
    };
    let seq: Vec<Vertex> = order.iter().flat_map(|&i| pieces[i].0.iter().copied()).collect();
    let bad = match endpoints {
        None => square_cycle_violation(h, &seq)?,
        Some(_) => square_path_violation(h, &seq),
    };
    if let Some(v) = bad {
        return Err(ExtremalError::Verification(format!("{v:?}")));
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(m: usize) -> (Graph, Parts) {
        let g = Graph::complete_multipartite(&[m, m, m]);
        let parts = [(0..m).collect(), (m..2 * m).collect(), (2 * m..3 * m).collect()];
        (g, parts)
    }

    #[test]
    fn complete_tripartite_cover_and_cycle() {
        let (g, parts) = k3(6);
        let cover = hall_triangle_cover(&g, &parts, Rational::new(0, 1)).unwrap();
        assert!(is_triangle_cover(&g, &parts, &cover));
        let pieces: Vec<Segment> = cover.triangles.iter().map(|&t| t.into()).collect();
        let gp = build_good_pair_graph(&g, &pieces);
        assert_eq!(gp.min_degree, 5);
        let c = square_ham_from_cover(&g, &pieces, None).unwrap();
        assert!(crate::verify_square_cycle(&g, &c).unwrap().hamiltonian);
        let p = square_ham_from_cover(&g, &pieces, Some((2, 4))).unwrap();
        assert_eq!(&p[..3], &pieces[2].0[..]);
        assert_eq!(&p[15..], &pieces[4].0[..]);
        let single = build_good_pair_graph(&g, &pieces[..1]);
        assert_eq!((single.pieces, single.min_degree), (1, 0));
    }

    #[test]
    fn isolated_vertex_gives_deficiency() {
        let (g, parts) = k3(4);
        // Vertex 0 loses every edge to the second class.
        let edges = g.edges().filter(|&(u, v)| !(u == 0 && (4..8).contains(&v)));
        let h = Graph::from_edges(12, edges).unwrap();
        match triangle_cover_by_matching(&h, &parts) {
            Err(HallError::Deficient { stage: 1, deficient, neighborhood: 0 }) => assert_eq!(deficient, vec![0]),
            other => panic!("expected a stage-1 deficiency, got {other:?}"),
        }
        assert!(matches!(hall_triangle_cover(&h, &parts, Rational::new(1, 10)), Err(HallError::Precondition(_))));
    }

    #[test]
    fn precedes_matches_verifier_on_all_patterns() {
        // Triangles 0,1,2 and 3,4,5; the nine cross pairs switched by mask bits.
        for mask in 0u32..512 {
            let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
            for i in 0..3 {
                for j in 0..3 {
                    if mask >> (3 * i + j) & 1 == 1 {
                        edges.push((i, 3 + j));
                    }
                }
            }
            let h = Graph::from_edges(6, edges).unwrap();
            let p = precedes(&h, &[0, 1, 2], &[3, 4, 5]);
            assert_eq!(p, crate::verify_square_path(&h, &[0, 1, 2, 3, 4, 5]));
            if mask == 511 {
                assert!(p && precedes(&h, &[3, 4, 5], &[0, 1, 2]));
            }
        }
    }
}

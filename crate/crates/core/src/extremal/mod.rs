//! The extremal-case engine: square Hamiltonian cycles in balanced
//! tripartite graphs whose pairs are nearly complete, allowing a few
//! low-degree vertices.

pub mod cover;
pub mod dirac;
pub mod matching;
pub mod repair;

use serde::Serialize;

pub use cover::{
    build_good_pair_graph, hall_triangle_cover, precedes, square_ham_from_cover, Parts, Segment, Triangle,
    TriangleCover,
};
pub use dirac::{dirac_ham_cycle, dirac_ham_path};
pub use repair::{bad_vertices, repair_bad_vertices, Repair};

use crate::error::ExtremalError;
use crate::graph::{Graph, Vertex};
use crate::params::Parameters;

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalStats {
    pub m: usize,
    pub bad_vertices: usize,
    pub exceptional_segments: usize,
    pub pieces: usize,
    pub good_pair_min_degree: usize,
    pub exceptional_degree: Option<usize>,
    pub cross_min_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalWitness {
    pub cycle: Vec<Vertex>,
    pub stats: ExtremalStats,
}

/// Repair, cover the rest by triangles, and close everything into a square
/// cycle through every vertex of the three classes.
pub fn extremal_square_cycle(h: &Graph, parts: &Parts, params: &Parameters) -> Result<ExtremalWitness, ExtremalError> {
    let m = cover::check_parts(h, parts)?;
    let repair = repair_bad_vertices(h, parts, params.alpha_prime, params.beta, params.gamma)?;
    let mut pieces: Vec<Segment> = Vec::new();
    if !repair.reduced[0].is_empty() {
        let tc = cover::triangle_cover_by_matching(h, &repair.reduced)?;
        pieces.extend(tc.triangles.iter().map(|&t| Segment::from(t)));
    }
    pieces.extend(repair.segments.iter().cloned());
    let gp = build_good_pair_graph(h, &pieces);
    let cycle = square_ham_from_cover(h, &pieces, None)?;
    if cycle.len() != 3 * m {
        return Err(ExtremalError::Verification(format!("cycle has {} vertices, expected {}", cycle.len(), 3 * m)));
    }
    Ok(ExtremalWitness {
        stats: ExtremalStats {
            m,
            bad_vertices: repair.bad.len(),
            exceptional_segments: repair.segments.len(),
            pieces: pieces.len(),
            good_pair_min_degree: gp.min_degree,
            exceptional_degree: repair.exceptional_degree,
            cross_min_degree: cover::cross_min_degree(h, parts),
        },
        cycle,
    })
}

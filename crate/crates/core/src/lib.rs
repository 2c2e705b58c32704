//! Square Hamiltonian cycles in graphs of large Ore-degree: graph
//! primitives, exact oracles, extremal detection, instance generators, and
//! constructive engines for the extremal and non-extremal cases.

pub mod error;
pub mod extremal;
pub mod extremal_detect;
pub mod generators;
pub mod graph;
pub mod io;
pub mod measures;
pub mod nonextremal;
pub mod oracles;
pub mod params;
pub mod ratio_serde;
pub mod verify;

pub type Rational = num_rational::Ratio<i64>;

pub use error::{GraphError, Precondition};
pub use graph::{Graph, Vertex, VertexSet};
pub use params::Parameters;
pub use verify::{verify_square_cycle, verify_square_path, SquareCycle, SquarePath, Tripartite};

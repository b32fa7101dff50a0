//! Exact construction of simple polar-to-neighborly 4-polytopes whose graphs
//! carry a Hamilton path that is monotone for the objective `x ↦ x4`.

pub mod combinatorics;
pub mod geometry;
pub mod hamilton;
pub mod io;
pub mod realization;
pub mod search;

pub use combinatorics::{CombinatorialPolytope, VertexLabel};
pub use geometry::{Hyperplane, Rational, Vec4};
pub use hamilton::{AofReport, HamiltonPath, Orientation};
pub use search::{Checkpoint, SearchOptions, SearchOutcome};

//! Realizability of weighted arc diagrams as lifts of bigon diagrams under simple
//! branched covers.

pub mod bigon;
pub mod complex;
pub mod diagram;
pub mod fixtures;
pub mod io;
pub mod ladder;
pub mod lifting;
pub mod merge;
pub mod normalize;
pub mod region;
pub mod render;
pub mod simplex;
pub mod solve;
pub mod structure;
pub mod weight;

pub use complex::{ArcId, Color, TriangulatedComplex, VertexId};
pub use diagram::WeightedArcDiagram;
pub use weight::Weight;

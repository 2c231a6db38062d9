//! Independent domination in planar and near-planar triangulations.

pub mod coloring;
pub mod domination;
pub mod generators;
pub mod harness;
pub mod plane_graph;
pub mod vertex_set;

pub use plane_graph::{Face, GraphClass, GraphKind, OuterHint, PlaneError, PlaneGraph};
pub use vertex_set::VertexSet;

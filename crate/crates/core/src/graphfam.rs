//! Graph families on subspaces (thick) and subsets (thin), derived graphs,
//! and the WBG1/WSG1 file formats.

mod build;
mod graph;
pub mod io;
mod spec;

pub use build::{
    binomial, build_bigraph, build_bigraph_capped, build_simple, build_simple_capped, side_count,
    thin_subsets, FamilyGraph, FamilySimple, Vertices, DEFAULT_VERTEX_CAP,
};
pub use graph::{BiGraph, Shape, Side, SimpleGraph};
pub use spec::{FamilySpec, Geometry, Mode, NormalFlags};

//! Bipartite graphs of incidence-type relations between subspaces of a
//! finite projective space (and between subsets of a finite set), with
//! tools to rebuild the geometry from the bare graph and to compute
//! automorphism groups.

pub mod autgroup;
pub mod bitset;
pub mod cli;
pub mod error;
pub mod field;
pub mod graphfam;
pub mod projgeom;
pub mod reconstruct;
pub mod roundup;
pub mod suites;
pub mod thinext;
pub mod verify;

pub use error::{Error, Result};

//! Clustered colouring toolkit for strong products of graphs of bounded
//! treewidth.
//!
//! A `c`-colouring here is an arbitrary assignment of `c` colours to the
//! vertices; its *clustering* is the largest number of vertices in a
//! monochromatic connected component. The crate provides:
//!
//! * a small dense-id graph type with strong and cartesian products
//!   ([`graph`]),
//! * the graph families the bounds are built from: fans, cones, towers,
//!   framed grids ([`families`]),
//! * tree decompositions, validation, and budgeted balanced separators
//!   ([`decomp`]),
//! * colouring evaluation, bound certificates, and the grid isoperimetry
//!   audit ([`colouring`]),
//! * the constructive upper-bound colouring algorithms ([`algos`]),
//! * exact minimum-clustering search and the framed-grid path lemma check
//!   ([`search`]).
//!
//! The crate is `no_std` (with `alloc`); everything is deterministic for a
//! fixed input and seed.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algos;
pub mod colouring;
pub mod decomp;
pub mod families;
pub mod graph;
pub mod search;

pub use colouring::{BoundCertificate, ClusteringReport, Colouring};
pub use decomp::TreeDecomposition;
pub use graph::Graph;

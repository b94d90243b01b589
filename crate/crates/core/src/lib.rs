//! General position sets on interconnection-network graphs.
//!
//! The crate builds grid, torus, butterfly and Beneš topologies, verifies
//! general position sets through geodesic betweenness, checks
//! monotone-geodesic labelings, bounds the general position number with
//! isometric path covers and computes it exactly by branch and bound.

pub mod error;
pub mod generators;
pub mod geodesy;
pub mod graph;
pub mod io;
pub mod labeling;
pub mod monotone;
pub mod report;
pub mod solver;
pub mod witness;

/// Vertices are dense ids `0..n`.
pub type Vertex = usize;

pub use error::{Error, Result};
pub use graph::{
    all_pairs_distances, clique_number, is_isometric_embedding, Connectivity, DistanceMatrix,
    EmbeddingReport, Graph,
};
pub use labeling::Labeling;

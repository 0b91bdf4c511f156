//! Realizing finite connected multigraphs as cut loci.
//!
//! The crate is organised bottom-up:
//!
//! - [`multigraph`]: dart-based multigraphs with loops and parallel edges,
//!   cyclic parts, blocks and spanning trees.
//! - [`ribbon`]: embedding schemes (rotation system plus a `Z₂` edge
//!   signature), face tracing, surface invariants and companion functions.
//! - [`construct`]: one-face embeddings on any connected graph, exhaustive
//!   enumeration of one-face schemes and cubic resolutions.
//! - [`constcurv`]: regular polygon realizations of one-face schemes on graphs
//!   of constant order, in the Euclidean plane or the Poincaré disk.
//! - [`torus_lab`]: cut loci on flat and bumped tori, exact (lattice Voronoi)
//!   and numeric (eikonal distance fields).
//! - [`cli`]: the command-line front end and its file formats.

pub mod cli;
pub mod constcurv;
pub mod construct;
pub mod multigraph;
pub mod ribbon;
pub mod torus_lab;

pub use multigraph::{Dart, EdgeId, GraphError, MultiGraph, VertexId};
pub use ribbon::{EmbeddingScheme, SchemeError};

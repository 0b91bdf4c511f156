//! Embedding schemes: a rotation system plus a `Z₂` edge signature.
//!
//! A scheme determines a ribbon graph (vertex disks joined by bands, a band
//! being twisted when its signature bit is set). The boundary circles of that
//! ribbon graph are the faces; a scheme with exactly one face is a strip of
//! its graph, i.e. a CL-structure when the graph is its own cyclic part.

mod companion;
mod faces;
mod walk;

use serde::Serialize;
use thiserror::Error;

use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};

pub use companion::{equivalent, CompanionFunction, StripDecomposition};
pub use faces::{trace_faces, Face, FaceStep, SurfaceInvariants, WalkStep};
pub use walk::{canonical_boundary_word, same_strip, scheme_from_walk, WordToken};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SchemeError {
    #[error("rotation lists cover {got} vertices, graph has {expected}")]
    RotationCount { expected: usize, got: usize },
    #[error("rotation at vertex {vertex} is not a permutation of its darts")]
    BadRotation { vertex: VertexId },
    #[error("signature has {got} entries, graph has {expected} edges")]
    SignatureCount { expected: usize, got: usize },
    #[error("not a strip: the scheme has {faces} faces")]
    NotAStrip { faces: usize },
    #[error("companion function has {got} values, graph has {expected} edges")]
    DomainMismatch { expected: usize, got: usize },
    #[error("decomposition labels violate the attachment invariant at edge {edge}")]
    InconsistentDecomposition { edge: EdgeId },
    #[error("walk is not a closed boundary walk: {0}")]
    BadWalk(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingScheme {
    graph: MultiGraph,
    rotation: Vec<Vec<Dart>>,
    signature: Vec<bool>,
}

impl EmbeddingScheme {
    pub fn new(
        graph: MultiGraph,
        rotation: Vec<Vec<Dart>>,
        signature: Vec<bool>,
    ) -> Result<Self, SchemeError> {
        if rotation.len() != graph.vertex_count() {
            return Err(SchemeError::RotationCount {
                expected: graph.vertex_count(),
                got: rotation.len(),
            });
        }
        if signature.len() != graph.edge_count() {
            return Err(SchemeError::SignatureCount {
                expected: graph.edge_count(),
                got: signature.len(),
            });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort();
            if sorted != graph.darts_at(v) {
                return Err(SchemeError::BadRotation { vertex: v });
            }
        }
        Ok(EmbeddingScheme {
            graph,
            rotation,
            signature,
        })
    }

    /// Darts in id order at every vertex, all signatures 0.
    pub fn default_for(graph: MultiGraph) -> Self {
        let rotation = (0..graph.vertex_count())
            .map(|v| graph.darts_at(v).to_vec())
            .collect();
        let signature = vec![false; graph.edge_count()];
        EmbeddingScheme {
            graph,
            rotation,
            signature,
        }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn signature(&self, e: EdgeId) -> bool {
        self.signature[e]
    }

    pub fn signatures(&self) -> &[bool] {
        &self.signature
    }

    /// Replaces the underlying graph by one with the same incidences (used to
    /// attach labels or lengths).
    pub fn with_graph(mut self, graph: MultiGraph) -> Result<Self, SchemeError> {
        if graph.all_ends() != self.graph.all_ends() {
            return Err(SchemeError::BadWalk(
                "replacement graph has different incidences".into(),
            ));
        }
        self.graph = graph;
        Ok(self)
    }

    /// Reverses the rotation at `v` and flips the signature of every non-loop
    /// edge at `v`. The ribbon graph is unchanged up to homeomorphism.
    pub fn switch_vertex(&self, v: VertexId) -> Self {
        let mut s = self.clone();
        s.rotation[v].reverse();
        for &d in self.graph.darts_at(v) {
            let e = d.edge();
            if !self.graph.is_loop(e) {
                s.signature[e] = !s.signature[e];
            }
        }
        s
    }

    pub fn faces(&self) -> Vec<Face> {
        trace_faces(&self.graph, &self.rotation, &self.signature)
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    pub fn is_cl_structure(&self) -> bool {
        self.face_count() == 1
    }

    pub fn surface_invariants(&self) -> SurfaceInvariants {
        faces::surface_invariants(self)
    }

    /// The unique face read as a closed walk in the graph: `2m` edge visits.
    pub fn boundary_walk(&self) -> Result<Vec<WalkStep>, SchemeError> {
        let faces = self.faces();
        if faces.len() != 1 {
            return Err(SchemeError::NotAStrip { faces: faces.len() });
        }
        Ok(faces[0]
            .steps
            .iter()
            .map(|s| WalkStep {
                dart: s.dart,
                edge: s.dart.edge(),
                from: self.graph.dart_vertex(s.dart),
                to: self.graph.dart_vertex(s.dart.partner()),
            })
            .collect())
    }

    /// True when some sequence of vertex switchings makes every signature 0,
    /// i.e. every cycle carries an even number of twisted bands.
    pub fn is_orientable(&self) -> bool {
        self.orientation_twists().is_some()
    }

    /// Switching bits along a spanning tree that clear all tree signatures;
    /// `None` when a fundamental cycle stays odd.
    pub(crate) fn orientation_twists(&self) -> Option<Vec<bool>> {
        let tree = self.graph.spanning_tree();
        let mut parity = vec![false; self.graph.vertex_count()];
        for &v in tree.order.iter().skip(1) {
            let e = tree.parent_edge[v].unwrap();
            let u = self.graph.opposite(e, v);
            parity[v] = parity[u] ^ self.signature[e];
        }
        for &e in &tree.non_tree_edges {
            let [a, b] = self.graph.ends(e);
            if self.signature[e] ^ parity[a] ^ parity[b] {
                return None;
            }
        }
        Some(parity)
    }
}

/// Serializable summary of a scheme for reports.
#[derive(Clone, Debug, Serialize)]
pub struct SchemeSummary {
    pub faces: usize,
    pub euler_characteristic: i64,
    pub strip_euler_characteristic: i64,
    pub orientable: bool,
    pub genus: u64,
}

impl From<&EmbeddingScheme> for SchemeSummary {
    fn from(s: &EmbeddingScheme) -> Self {
        let inv = s.surface_invariants();
        SchemeSummary {
            faces: inv.faces,
            euler_characteristic: inv.euler_characteristic,
            strip_euler_characteristic: inv.strip_euler_characteristic,
            orientable: inv.orientable,
            genus: inv.genus,
        }
    }
}

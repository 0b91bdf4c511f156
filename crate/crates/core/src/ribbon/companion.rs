use serde::Serialize;

use super::{EmbeddingScheme, SchemeError};
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};

/// A scheme split into elementary strips, each with a distinguished face.
///
/// `attach[d]` is the agreement bit of the incidence carried by dart `d`
/// between the distinguished faces of the vertex strip and of the edge strip.
#[derive(Clone, Debug, PartialEq)]
pub struct StripDecomposition {
    scheme: EmbeddingScheme,
    vertex_face: Vec<bool>,
    edge_face: Vec<bool>,
    attach: Vec<bool>,
}

/// An edge labelling in `Z₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CompanionFunction {
    pub values: Vec<bool>,
}

impl CompanionFunction {
    pub fn new(values: Vec<bool>) -> Self {
        CompanionFunction { values }
    }

    pub fn value(&self, e: EdgeId) -> bool {
        self.values[e]
    }

    pub fn complement(&self) -> Self {
        CompanionFunction {
            values: self.values.iter().map(|b| !b).collect(),
        }
    }
}

impl StripDecomposition {
    /// All distinguished faces labelled 0; the `-` dart of each edge then
    /// carries the edge's signature.
    pub fn normalized(scheme: EmbeddingScheme) -> Self {
        let g = scheme.graph();
        let attach = (0..g.dart_count())
            .map(|d| !Dart(d).is_plus() && scheme.signature(Dart(d).edge()))
            .collect();
        StripDecomposition {
            vertex_face: vec![false; g.vertex_count()],
            edge_face: vec![false; g.edge_count()],
            attach,
            scheme,
        }
    }

    /// Checks that the labels are reachable from the normalized ones, i.e.
    /// `attach(d) + attach(d') + face(v) + face(v') = sig(e)` on every edge.
    pub fn new(
        scheme: EmbeddingScheme,
        vertex_face: Vec<bool>,
        edge_face: Vec<bool>,
        attach: Vec<bool>,
    ) -> Result<Self, SchemeError> {
        let g = scheme.graph();
        if vertex_face.len() != g.vertex_count()
            || edge_face.len() != g.edge_count()
            || attach.len() != g.dart_count()
        {
            return Err(SchemeError::DomainMismatch {
                expected: g.edge_count(),
                got: edge_face.len(),
            });
        }
        for e in 0..g.edge_count() {
            let [u, w] = g.ends(e);
            let lhs = attach[2 * e] ^ attach[2 * e + 1] ^ vertex_face[u] ^ vertex_face[w];
            if lhs != scheme.signature(e) {
                return Err(SchemeError::InconsistentDecomposition { edge: e });
            }
        }
        Ok(StripDecomposition {
            scheme,
            vertex_face,
            edge_face,
            attach,
        })
    }

    pub fn scheme(&self) -> &EmbeddingScheme {
        &self.scheme
    }

    pub fn vertex_face(&self, v: VertexId) -> bool {
        self.vertex_face[v]
    }

    pub fn edge_face(&self, e: EdgeId) -> bool {
        self.edge_face[e]
    }

    pub fn attach(&self, d: Dart) -> bool {
        self.attach[d.0]
    }

    /// Relabels the distinguished face of a vertex strip, which flips every
    /// agreement bit at that vertex.
    pub fn flip_vertex_face(&mut self, v: VertexId) {
        self.vertex_face[v] ^= true;
        for &d in self.scheme.graph().darts_at(v) {
            self.attach[d.0] ^= true;
        }
    }

    /// Relabels the distinguished face of an edge strip: both of its
    /// agreement bits flip.
    pub fn flip_edge_face(&mut self, e: EdgeId) {
        self.edge_face[e] ^= true;
        self.attach[2 * e] ^= true;
        self.attach[2 * e + 1] ^= true;
    }

    /// `s(e) = attach(d) + attach(d')` over the two darts of `e`; for a loop
    /// both bits sit at the same vertex.
    pub fn companion_function(&self) -> CompanionFunction {
        let m = self.scheme.graph().edge_count();
        CompanionFunction {
            values: (0..m)
                .map(|e| self.attach[2 * e] ^ self.attach[2 * e + 1])
                .collect(),
        }
    }
}

/// On every block, the two functions agree or are complementary.
pub fn equivalent(
    a: &CompanionFunction,
    b: &CompanionFunction,
    g: &MultiGraph,
) -> Result<bool, SchemeError> {
    for f in [a, b] {
        if f.values.len() != g.edge_count() {
            return Err(SchemeError::DomainMismatch {
                expected: g.edge_count(),
                got: f.values.len(),
            });
        }
    }
    Ok(g.two_connected_components().iter().all(|block| {
        let diff = a.values[block[0]] ^ b.values[block[0]];
        block.iter().all(|&e| a.values[e] ^ b.values[e] == diff)
    }))
}

//! Building strips: trees, one-face embeddings of arbitrary graphs, the
//! census of all strips on small graphs, and cubic resolution.

mod census;
mod cubic;

use thiserror::Error;

use crate::multigraph::{Dart, EdgeId, GraphError, MultiGraph, VertexId};
use crate::ribbon::{EmbeddingScheme, SchemeError};

pub use census::{enumerate_cl_structures, Census, CensusClass};
pub use cubic::{cubic_resolution, CubicResolution};

#[derive(Debug, Error, PartialEq)]
pub enum ConstructError {
    #[error("expected a tree, graph has {cycles} independent cycles")]
    NotATree { cycles: usize },
    #[error("inserting edge {edge} left {faces} faces")]
    FaceInvariant { edge: EdgeId, faces: usize },
    #[error("census would examine up to {bound} schemes, limit is {limit}")]
    TooLarge { bound: u128, limit: u128 },
    #[error("vertex {vertex} has degree {degree}; take the cyclic part first")]
    DegreeTooSmall { vertex: VertexId, degree: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// The planar strip of a tree: darts in id order, no twisted bands.
pub fn tree_strip(t: &MultiGraph) -> Result<EmbeddingScheme, ConstructError> {
    if !t.is_tree() {
        return Err(ConstructError::NotATree {
            cycles: t.generating_cycle_count(),
        });
    }
    Ok(EmbeddingScheme::default_for(t.clone()))
}

/// Rotation system under construction: only some darts are placed.
struct Partial {
    rotation: Vec<Vec<Dart>>,
    signature: Vec<bool>,
    placed_edges: usize,
}

impl Partial {
    fn successor_maps(&self, darts: usize) -> (Vec<Dart>, Vec<Dart>) {
        let mut next = vec![Dart(usize::MAX); darts];
        let mut prev = vec![Dart(usize::MAX); darts];
        for rot in &self.rotation {
            let k = rot.len();
            for (i, &d) in rot.iter().enumerate() {
                next[d.0] = rot[(i + 1) % k];
                prev[d.0] = rot[(i + k - 1) % k];
            }
        }
        (next, prev)
    }

    /// The orbit of `(start, false)` as (dart, flag) states.
    fn orbit(&self, darts: usize, start: Dart) -> Vec<(Dart, bool)> {
        let (next, prev) = self.successor_maps(darts);
        let (mut d, mut s) = (start, false);
        let mut out = Vec::new();
        loop {
            out.push((d, s));
            let back = d.partner();
            s ^= self.signature[d.edge()];
            d = if s { prev[back.0] } else { next[back.0] };
            if (d, s) == (start, false) {
                return out;
            }
        }
    }

    fn insert_at(&mut self, v: VertexId, anchor: Dart, flag: bool, x: Dart) {
        let rot = &mut self.rotation[v];
        let i = rot
            .iter()
            .position(|&d| d == anchor)
            .expect("anchor is placed");
        rot.insert(if flag { i + 1 } else { i }, x);
    }
}

/// A one-face scheme on any connected graph.
///
/// Starts from the planar strip of a BFS spanning tree and adds the
/// remaining edges in id order. Each new edge has its two darts inserted at
/// corners of the current boundary circle, one at each endpoint, and gets the
/// twist that makes the band re-join the two arcs of the cut circle into one.
/// The face count is checked after every insertion.
pub fn one_face_embedding(g: &MultiGraph) -> Result<EmbeddingScheme, ConstructError> {
    let darts = g.dart_count();
    let tree = g.spanning_tree();
    let mut p = Partial {
        rotation: vec![Vec::new(); g.vertex_count()],
        signature: vec![false; g.edge_count()],
        placed_edges: 0,
    };
    let mut tree_darts: Vec<Dart> = tree
        .tree_edges
        .iter()
        .flat_map(|&e| [Dart::plus(e), Dart::minus(e)])
        .collect();
    tree_darts.sort();
    for d in tree_darts {
        p.rotation[g.dart_vertex(d)].push(d);
    }
    p.placed_edges = tree.tree_edges.len();

    for &e in &tree.non_tree_edges {
        let [u, w] = g.ends(e);
        let (x1, x2) = (Dart::plus(e), Dart::minus(e));
        if p.placed_edges == 0 {
            // a lone vertex: the first loop is a Möbius band
            p.rotation[u] = vec![x1, x2];
            p.signature[e] = true;
        } else {
            let start = p.rotation.iter().flatten().next().copied().unwrap();
            let orbit = p.orbit(darts, start);
            let corner_at = |v: VertexId| {
                *orbit
                    .iter()
                    .find(|(d, _)| g.dart_vertex(*d) == v)
                    .expect("the single face visits every vertex")
            };
            let (c1, t1) = corner_at(u);
            let (c2, t2) = corner_at(w);
            p.insert_at(u, c1, t1, x1);
            p.insert_at(w, c2, t2, x2);
            p.signature[e] = !(t1 ^ t2);
        }
        p.placed_edges += 1;
        let len = p.orbit(darts, x1).len();
        if len != 2 * p.placed_edges {
            return Err(ConstructError::FaceInvariant {
                edge: e,
                faces: count_partial_faces(&p, darts),
            });
        }
    }
    Ok(EmbeddingScheme::new(g.clone(), p.rotation, p.signature)?)
}

fn count_partial_faces(p: &Partial, darts: usize) -> usize {
    let mut seen = vec![false; 2 * darts];
    let mut faces = 0;
    for &d in p.rotation.iter().flatten() {
        for s in [false, true] {
            if seen[2 * d.0 + s as usize] {
                continue;
            }
            faces += 1;
            // trace the orbit of (d, s) and its reverse
            let (next, prev) = p.successor_maps(darts);
            let (mut x, mut f) = (d, s);
            loop {
                seen[2 * x.0 + f as usize] = true;
                let back = x.partner();
                let sig = p.signature[x.edge()];
                seen[2 * back.0 + !(f ^ sig) as usize] = true;
                f ^= sig;
                x = if f { prev[back.0] } else { next[back.0] };
                if (x, f) == (d, s) {
                    break;
                }
            }
        }
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::catalog;

    #[test]
    fn tree_strips() {
        let point = tree_strip(&MultiGraph::point()).unwrap();
        assert_eq!(point.face_count(), 1);
        assert!(point.rotation(0).is_empty());
        let edge = tree_strip(&catalog::path(2)).unwrap();
        assert_eq!(edge.faces()[0].len(), 2);
        let star = tree_strip(&catalog::star(3)).unwrap();
        let faces = star.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 6);
        assert_eq!(
            tree_strip(&catalog::cycle(3)).unwrap_err(),
            ConstructError::NotATree { cycles: 1 }
        );
    }

    #[test]
    fn cycles_become_mobius_bands() {
        for n in 1..6 {
            let s = one_face_embedding(&catalog::cycle(n)).unwrap();
            assert!(s.is_cl_structure());
            let total = s.signatures().iter().filter(|&&b| b).count();
            assert_eq!(total % 2, 1);
            assert!(!s.is_orientable());
        }
    }

    #[test]
    fn rose_and_petersen() {
        let rose = one_face_embedding(&catalog::rose(2)).unwrap();
        assert!(rose.is_cl_structure());
        assert_eq!(rose.surface_invariants().euler_characteristic, 0);
        let p = one_face_embedding(&catalog::petersen()).unwrap();
        assert!(p.is_cl_structure());
        let inv = p.surface_invariants();
        assert_eq!(inv.euler_characteristic, -4);
        assert_eq!(inv.strip_euler_characteristic, -5);
    }

    #[test]
    fn theta_walk_visits_each_vertex_three_times() {
        let s = one_face_embedding(&catalog::theta(3)).unwrap();
        let walk = s.boundary_walk().unwrap();
        assert_eq!(walk.len(), 6);
        for v in 0..2 {
            assert_eq!(walk.iter().filter(|w| w.from == v).count(), 3);
        }
    }

    #[test]
    fn k4_strip_is_non_orientable_of_genus_three() {
        let s = one_face_embedding(&catalog::complete(4)).unwrap();
        let inv = s.surface_invariants();
        assert_eq!(inv.euler_characteristic, -1);
        // χ odd forces a non-orientable surface
        assert!(!inv.orientable);
        assert_eq!(inv.genus, 3);
    }

    #[test]
    fn small_corpus_has_one_face_everywhere() {
        for g in catalog::connected_multigraphs(5) {
            let s = one_face_embedding(&g).unwrap();
            assert!(s.is_cl_structure(), "{:?}", g.all_ends());
            let q = g.generating_cycle_count() as i64;
            let inv = s.surface_invariants();
            assert_eq!(inv.euler_characteristic, 2 - q);
            assert_eq!(inv.strip_euler_characteristic, 1 - q);
        }
    }
}

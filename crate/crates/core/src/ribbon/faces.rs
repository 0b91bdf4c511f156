use serde::Serialize;

use super::EmbeddingScheme;
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};

/// One step of a face: the dart along which the boundary leaves a vertex and
/// the side flag the walk carries at that moment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FaceStep {
    pub dart: Dart,
    pub flipped: bool,
}

/// A boundary circle of the ribbon graph, as a cyclic sequence of steps. The
/// point graph has a single face with no steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub steps: Vec<FaceStep>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn darts(&self) -> Vec<Dart> {
        self.steps.iter().map(|s| s.dart).collect()
    }
}

/// A face read as a walk in the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WalkStep {
    pub dart: Dart,
    pub edge: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Of the closed surface obtained by capping every face with a disk.
    pub euler_characteristic: i64,
    /// Of the ribbon surface itself, `n − m`; equals `1 − q`.
    pub strip_euler_characteristic: i64,
    pub orientable: bool,
    /// Orientable genus `(2 - χ)/2`, or non-orientable genus `2 - χ`.
    pub genus: u64,
}

struct Cycles {
    next: Vec<Dart>,
    prev: Vec<Dart>,
}

impl Cycles {
    fn new(dart_count: usize, rotation: &[Vec<Dart>]) -> Self {
        let mut next = vec![Dart(0); dart_count];
        let mut prev = vec![Dart(0); dart_count];
        for rot in rotation {
            let k = rot.len();
            for (i, &d) in rot.iter().enumerate() {
                next[d.0] = rot[(i + 1) % k];
                prev[d.0] = rot[(i + k - 1) % k];
            }
        }
        Cycles { next, prev }
    }
}

/// Two-sided face tracing. A state is a dart together with a side flag; from
/// `(d, s)` the walk crosses the edge of `d`, picks up that edge's signature,
/// and continues with the rotation successor of the partner dart, or with its
/// predecessor when the flag is set. Each boundary circle appears as a pair of
/// mutually reverse orbits; the orbit found first in state order is kept.
///
/// Works for any rotation covering every dart exactly once, including
/// partial schemes built during construction.
pub fn trace_faces(graph: &MultiGraph, rotation: &[Vec<Dart>], signature: &[bool]) -> Vec<Face> {
    let darts = graph.dart_count();
    if darts == 0 {
        return vec![Face { steps: Vec::new() }];
    }
    let cyc = Cycles::new(darts, rotation);
    let index = |d: Dart, s: bool| 2 * d.0 + s as usize;
    let mut seen = vec![false; 2 * darts];
    let mut faces = Vec::new();
    for start in 0..2 * darts {
        if seen[start] {
            continue;
        }
        let (mut d, mut s) = (Dart(start / 2), start % 2 == 1);
        let mut steps = Vec::new();
        loop {
            seen[index(d, s)] = true;
            let e = d.edge();
            let back = d.partner();
            let rs = !(s ^ signature[e]);
            seen[index(back, rs)] = true;
            steps.push(FaceStep {
                dart: d,
                flipped: s,
            });
            s ^= signature[e];
            d = if s {
                cyc.prev[back.0]
            } else {
                cyc.next[back.0]
            };
            if index(d, s) == start {
                break;
            }
        }
        faces.push(Face { steps });
    }
    faces
}

pub(super) fn surface_invariants(s: &EmbeddingScheme) -> SurfaceInvariants {
    let g = s.graph();
    let (n, m) = (g.vertex_count(), g.edge_count());
    let f = s.face_count();
    let chi = n as i64 - m as i64 + f as i64;
    let orientable = s.is_orientable();
    let genus = if orientable { (2 - chi) / 2 } else { 2 - chi } as u64;
    SurfaceInvariants {
        vertices: n,
        edges: m,
        faces: f,
        euler_characteristic: chi,
        strip_euler_characteristic: n as i64 - m as i64,
        orientable,
        genus,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::multigraph::catalog;

    /// Orbits of `d -> next(partner(d))`: the usual face rule for schemes
    /// without twisted bands.
    fn classical_face_count(graph: &MultiGraph, rotation: &[Vec<Dart>]) -> usize {
        let cyc = Cycles::new(graph.dart_count(), rotation);
        let mut seen = vec![false; graph.dart_count()];
        let mut count = 0;
        for start in 0..graph.dart_count() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut d = Dart(start);
            while !seen[d.0] {
                seen[d.0] = true;
                d = cyc.next[d.partner().0];
            }
        }
        count.max(1)
    }

    fn arb_scheme() -> impl Strategy<Value = EmbeddingScheme> {
        let graphs = catalog::connected_multigraphs(5);
        (0..graphs.len(), any::<u64>())
            .prop_map(move |(i, seed)| random_scheme(graphs[i].clone(), seed))
    }

    pub(crate) fn random_scheme(g: MultiGraph, seed: u64) -> EmbeddingScheme {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rotation = (0..g.vertex_count())
            .map(|v| {
                let mut r = g.darts_at(v).to_vec();
                r.shuffle(&mut rng);
                r
            })
            .collect();
        let signature = (0..g.edge_count()).map(|_| rng.gen()).collect();
        EmbeddingScheme::new(g, rotation, signature).unwrap()
    }

    #[test]
    fn point_has_one_empty_face() {
        let s = EmbeddingScheme::default_for(MultiGraph::point());
        let faces = s.faces();
        assert_eq!(faces.len(), 1);
        assert!(faces[0].is_empty());
        assert_eq!(s.surface_invariants().euler_characteristic, 2);
    }

    #[test]
    fn single_loop_schemes() {
        let g = catalog::rose(1);
        let straight = EmbeddingScheme::default_for(g.clone());
        assert_eq!(straight.face_count(), 2);
        let twisted = EmbeddingScheme::new(g, vec![vec![Dart(0), Dart(1)]], vec![true]).unwrap();
        assert_eq!(twisted.face_count(), 1);
        assert!(!twisted.is_orientable());
    }

    #[test]
    fn matches_classical_rule_on_untwisted_schemes() {
        for (i, g) in catalog::connected_multigraphs(5).into_iter().enumerate() {
            for seed in 0..4 {
                let s = random_scheme(g.clone(), seed * 31 + i as u64);
                let plain = EmbeddingScheme::new(
                    g.clone(),
                    s.rotations().to_vec(),
                    vec![false; g.edge_count()],
                )
                .unwrap();
                assert_eq!(
                    plain.face_count(),
                    classical_face_count(&g, plain.rotations())
                );
            }
        }
    }

    proptest! {
        #[test]
        fn every_edge_is_bounded_twice(s in arb_scheme()) {
            let mut count = vec![0usize; s.graph().edge_count()];
            for f in s.faces() {
                for st in f.steps {
                    count[st.dart.edge()] += 1;
                }
            }
            prop_assert!(count.iter().all(|&c| c == 2));
        }

        #[test]
        fn face_count_ignores_rotation_roots(s in arb_scheme(), shift in 0usize..8) {
            let rotated: Vec<Vec<Dart>> = s
                .rotations()
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    if !r.is_empty() {
                        let k = shift % r.len();
                        r.rotate_left(k);
                    }
                    r
                })
                .collect();
            let t = EmbeddingScheme::new(s.graph().clone(), rotated, s.signatures().to_vec()).unwrap();
            prop_assert_eq!(t.face_count(), s.face_count());
        }

        #[test]
        fn switching_is_invisible(s in arb_scheme(), v in 0usize..6) {
            let v = v % s.graph().vertex_count();
            let t = s.switch_vertex(v);
            prop_assert_eq!(t.face_count(), s.face_count());
            prop_assert_eq!(t.surface_invariants(), s.surface_invariants());
            prop_assert_eq!(t.switch_vertex(v), s);
        }

        #[test]
        fn euler_characteristic_matches_genus(s in arb_scheme()) {
            let inv = s.surface_invariants();
            let chi = inv.euler_characteristic;
            if inv.orientable {
                prop_assert_eq!(chi, 2 - 2 * inv.genus as i64);
            } else {
                prop_assert_eq!(chi, 2 - inv.genus as i64);
                prop_assert!(inv.genus >= 1);
            }
        }
    }
}

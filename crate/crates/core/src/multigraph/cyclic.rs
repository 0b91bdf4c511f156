use super::{EdgeId, MultiGraph, VertexId};

/// The cyclic part of a graph together with its correspondence to the input.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicPart {
    pub graph: MultiGraph,
    /// Input vertex -> vertex of the cyclic part, `None` for deleted or
    /// smoothed vertices.
    pub vertex_map: Vec<Option<VertexId>>,
    /// For each edge of the cyclic part, the chain of input edges it replaces,
    /// read from its `+` end to its `-` end. `true` means the input edge is
    /// traversed from its own `+` end.
    pub edge_chains: Vec<Vec<(EdgeId, bool)>>,
}

#[derive(Clone, Debug)]
struct Chain {
    ends: [VertexId; 2],
    parts: Vec<(EdgeId, bool)>,
    length: f64,
}

impl Chain {
    fn reversed(mut self) -> Chain {
        self.ends.swap(0, 1);
        self.parts.reverse();
        for p in &mut self.parts {
            p.1 = !p.1;
        }
        self
    }
}

/// Two phases: leaves are pruned until none remain, then every degree-2
/// vertex whose two edge-ends belong to different chains is smoothed.
pub(super) fn cyclic_part(g: &MultiGraph) -> CyclicPart {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut alive_v = vec![true; n];
    let mut alive_e = vec![true; m];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();

    let mut stack: Vec<VertexId> = (0..n).rev().filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if !alive_v[v] || deg[v] != 1 {
            continue;
        }
        let d = *g
            .darts_at(v)
            .iter()
            .find(|d| alive_e[d.edge()])
            .expect("degree-1 vertex has one live edge");
        let e = d.edge();
        let w = g.dart_vertex(d.partner());
        alive_e[e] = false;
        alive_v[v] = false;
        deg[v] = 0;
        deg[w] -= 1;
        if deg[w] == 1 {
            stack.push(w);
        }
    }

    // Slot = id of the smallest input edge in the chain, for stable ordering.
    let mut chains: Vec<Option<Chain>> = (0..m)
        .map(|e| {
            alive_e[e].then(|| Chain {
                ends: g.ends(e),
                parts: vec![(e, true)],
                length: g.length(e),
            })
        })
        .collect();

    loop {
        let mut merged = false;
        for v in 0..n {
            if !alive_v[v] || deg[v] != 2 {
                continue;
            }
            let incident: Vec<(usize, usize)> = chains
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.as_ref().map(|c| (i, c)))
                .flat_map(|(i, c)| {
                    c.ends
                        .iter()
                        .enumerate()
                        .filter(move |(_, &x)| x == v)
                        .map(move |(k, _)| (i, k))
                })
                .collect();
            debug_assert_eq!(incident.len(), 2);
            let (a, b) = (incident[0].0, incident[1].0);
            if a == b {
                // a single loop through v
                continue;
            }
            let mut ca = chains[a].take().unwrap();
            let mut cb = chains[b].take().unwrap();
            if ca.ends[1] != v {
                ca = ca.reversed();
            }
            if cb.ends[0] != v {
                cb = cb.reversed();
            }
            let joined = Chain {
                ends: [ca.ends[0], cb.ends[1]],
                parts: ca.parts.into_iter().chain(cb.parts).collect(),
                length: ca.length + cb.length,
            };
            chains[a.min(b)] = Some(joined);
            alive_v[v] = false;
            deg[v] = 0;
            merged = true;
        }
        if !merged {
            break;
        }
    }

    let mut vertex_map = vec![None; n];
    let mut labels = Vec::new();
    for v in 0..n {
        if alive_v[v] {
            vertex_map[v] = Some(labels.len());
            labels.push(g.vertex_label(v).to_string());
        }
    }
    let chains: Vec<Chain> = chains.into_iter().flatten().collect();
    let edges: Vec<(VertexId, VertexId)> = chains
        .iter()
        .map(|c| {
            (
                vertex_map[c.ends[0]].unwrap(),
                vertex_map[c.ends[1]].unwrap(),
            )
        })
        .collect();
    let edge_labels: Vec<String> = chains
        .iter()
        .map(|c| {
            c.parts
                .iter()
                .map(|&(e, _)| g.edge_label(e))
                .collect::<Vec<_>>()
                .join("_")
        })
        .collect();
    let mut graph = MultiGraph::new(labels.len(), edges)
        .and_then(|h| h.with_labels(labels, edge_labels))
        .expect("cyclic part of a connected graph is connected");
    if g.is_metric() {
        graph = graph
            .with_lengths(chains.iter().map(|c| c.length).collect())
            .expect("sums of positive lengths are positive");
    }
    CyclicPart {
        graph,
        vertex_map,
        edge_chains: chains.into_iter().map(|c| c.parts).collect(),
    }
}

#[cfg(test)]
mod tests {
    use crate::multigraph::catalog;
    use crate::multigraph::MultiGraph;

    #[test]
    fn path_collapses_to_point() {
        let cp = catalog::path(3).cyclic_part();
        assert_eq!(cp.graph.vertex_count(), 1);
        assert_eq!(cp.graph.edge_count(), 0);
    }

    #[test]
    fn theta_is_its_own_cyclic_part() {
        let theta = catalog::theta(3);
        let cp = theta.cyclic_part();
        assert_eq!(cp.graph, theta);
    }

    #[test]
    fn tadpole_becomes_a_loop_of_length_three() {
        let g = catalog::tadpole().with_lengths(vec![1.0; 4]).unwrap();
        let cp = g.cyclic_part();
        assert_eq!(cp.graph.vertex_count(), 1);
        assert_eq!(cp.graph.edge_count(), 1);
        assert!(cp.graph.is_loop(0));
        assert_eq!(cp.graph.length(0), 3.0);
        assert_eq!(cp.edge_chains[0].len(), 3);
    }

    #[test]
    fn two_cycle_smooths_to_loop() {
        let g = MultiGraph::new(2, [(0, 1), (0, 1)]).unwrap();
        let cp = g.cyclic_part();
        assert_eq!(cp.graph.vertex_count(), 1);
        assert_eq!(cp.graph.edge_count(), 1);
    }

    #[test]
    fn subdivided_theta_is_restored() {
        // theta with one edge subdivided twice and a pendant path hung on it
        let g =
            MultiGraph::new(6, [(0, 1), (0, 1), (0, 2), (2, 3), (3, 1), (3, 4), (4, 5)]).unwrap();
        let cp = g.cyclic_part();
        assert!(cp.graph.is_isomorphic(&catalog::theta(3)));
        let chain_total: usize = cp.edge_chains.iter().map(Vec::len).sum();
        assert_eq!(chain_total, 5);
    }
}

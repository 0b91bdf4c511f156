use super::ConstructError;
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};

/// A cubic graph together with the edges whose contraction gives back the
/// input.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicResolution {
    pub graph: MultiGraph,
    /// Edges added inside blown-up vertices, in creation order.
    pub inserted_edges: Vec<EdgeId>,
    /// Input vertex each vertex of `graph` came from.
    pub origin: Vec<VertexId>,
}

/// Replaces each vertex of degree `d > 3` by a caterpillar with `d − 2`
/// vertices of degree 3. The first caterpillar vertex keeps the old id and
/// takes the first two darts, each middle vertex takes one, the last takes
/// the final two; darts are ordered `+` ends by edge id, then `−` ends.
///
/// The point and the single loop have no cubic resolution and are returned
/// unchanged.
pub fn cubic_resolution(g: &MultiGraph) -> Result<CubicResolution, ConstructError> {
    let n = g.vertex_count();
    let identity = || CubicResolution {
        graph: g.clone(),
        inserted_edges: Vec::new(),
        origin: (0..n).collect(),
    };
    if g.edge_count() == 0 || (n == 1 && g.edge_count() == 1) {
        return Ok(identity());
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) < 3) {
        return Err(ConstructError::DegreeTooSmall {
            vertex: v,
            degree: g.degree(v),
        });
    }

    let mut owner: Vec<VertexId> = (0..g.dart_count())
        .map(|d| g.dart_vertex(Dart(d)))
        .collect();
    let mut origin: Vec<VertexId> = (0..n).collect();
    let mut new_edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut vlabels: Vec<String> = g.vertex_labels().to_vec();
    let mut elabels: Vec<String> = g.edge_labels().to_vec();
    for v in 0..n {
        let d = g.degree(v);
        if d <= 3 {
            continue;
        }
        let mut darts: Vec<Dart> = g.darts_at(v).to_vec();
        darts.sort_by_key(|x| (!x.is_plus(), x.edge()));
        let mut chain = vec![v];
        for i in 1..d - 2 {
            chain.push(origin.len());
            origin.push(v);
            vlabels.push(format!("{}.{i}", g.vertex_label(v)));
        }
        for (i, x) in darts.iter().enumerate() {
            let slot = i.saturating_sub(1).min(d - 3);
            owner[x.0] = chain[slot];
        }
        for i in 0..d - 3 {
            new_edges.push((chain[i], chain[i + 1]));
            elabels.push(format!("{}~{}", g.vertex_label(v), i + 1));
        }
    }

    let m = g.edge_count();
    let edges: Vec<(VertexId, VertexId)> = (0..m)
        .map(|e| (owner[2 * e], owner[2 * e + 1]))
        .chain(new_edges.iter().copied())
        .collect();
    let inserted_edges: Vec<EdgeId> = (m..edges.len()).collect();
    let mut graph = MultiGraph::new(origin.len(), edges)?.with_labels(vlabels, elabels)?;
    if let Some(lengths) = g.lengths() {
        let short = 1e-3 * lengths.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut all = lengths.to_vec();
        all.extend(std::iter::repeat_n(short, inserted_edges.len()));
        graph = graph.with_lengths(all)?;
    }
    Ok(CubicResolution {
        graph,
        inserted_edges,
        origin,
    })
}

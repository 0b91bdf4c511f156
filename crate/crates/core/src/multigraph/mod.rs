//! Finite connected multigraphs stored as darts (half-edges).
//!
//! Edge `e` owns the two darts `2e` (the `+` end, attached to `ends(e)[0]`)
//! and `2e + 1` (the `-` end, attached to `ends(e)[1]`). Loops and parallel
//! edges need no special casing: a loop is an edge whose two darts sit at the
//! same vertex.

mod blocks;
pub mod catalog;
mod cyclic;
mod iso;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cyclic::CyclicPart;

pub type VertexId = usize;
pub type EdgeId = usize;

/// A half-edge. The low bit selects the end of the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: EdgeId, minus_end: bool) -> Self {
        Dart(2 * edge + minus_end as usize)
    }

    /// The `+` dart of `edge`, attached to `ends(edge)[0]`.
    pub fn plus(edge: EdgeId) -> Self {
        Dart(2 * edge)
    }

    /// The `-` dart of `edge`, attached to `ends(edge)[1]`.
    pub fn minus(edge: EdgeId) -> Self {
        Dart(2 * edge + 1)
    }

    pub fn edge(self) -> EdgeId {
        self.0 >> 1
    }

    pub fn is_plus(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn end_index(self) -> usize {
        self.0 & 1
    }

    pub fn partner(self) -> Self {
        Dart(self.0 ^ 1)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.edge(),
            if self.is_plus() { '+' } else { '-' }
        )
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error(
        "graph is disconnected ({components} components); only connected graphs are supported"
    )]
    Disconnected { components: usize },
    #[error("edge {edge} references vertex {vertex}, but the graph has {vertex_count} vertices")]
    UnknownVertex {
        edge: EdgeId,
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("edge {edge} has non-positive length {length}")]
    NonPositiveLength { edge: EdgeId, length: f64 },
    #[error("expected {expected} edge lengths, got {got}")]
    LengthCount { expected: usize, got: usize },
    #[error("expected {expected} {what} labels, got {got}")]
    LabelCount {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("duplicate {what} label {label:?}")]
    DuplicateLabel { what: &'static str, label: String },
    #[error("edge {0} is not a tree edge that can be contracted")]
    BadContraction(EdgeId),
}

/// A finite connected multigraph, optionally metric.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiGraph {
    vertex_labels: Vec<String>,
    edge_labels: Vec<String>,
    ends: Vec<[VertexId; 2]>,
    lengths: Option<Vec<f64>>,
    darts_at: Vec<Vec<Dart>>,
}

/// Vertex degrees plus the two flags used throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub is_cubic: bool,
    /// `Some(k)` when every vertex has degree `k`.
    pub constant_order: Option<usize>,
}

impl DegreeProfile {
    pub fn is_constant_order(&self, k: usize) -> bool {
        self.constant_order == Some(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    /// Tree edges in discovery (BFS) order.
    pub tree_edges: Vec<EdgeId>,
    /// Remaining edges, ascending. Each closes one generating cycle.
    pub non_tree_edges: Vec<EdgeId>,
    /// Edge to the BFS parent, `None` at the root.
    pub parent_edge: Vec<Option<EdgeId>>,
    /// Vertices in BFS order, root first.
    pub order: Vec<VertexId>,
}

impl MultiGraph {
    /// Builds a graph on vertices `0..vertex_count` from `(tail, head)` pairs.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let ends: Vec<[VertexId; 2]> = edges.into_iter().map(|(a, b)| [a, b]).collect();
        for (e, &[a, b]) in ends.iter().enumerate() {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::UnknownVertex {
                        edge: e,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
        }
        let mut darts_at = vec![Vec::new(); vertex_count];
        for (e, &[a, b]) in ends.iter().enumerate() {
            darts_at[a].push(Dart::plus(e));
            darts_at[b].push(Dart::minus(e));
        }
        for darts in &mut darts_at {
            darts.sort();
        }
        let g = MultiGraph {
            vertex_labels: (0..vertex_count).map(|v| v.to_string()).collect(),
            edge_labels: (0..ends.len()).map(|e| format!("e{e}")).collect(),
            ends,
            lengths: None,
            darts_at,
        };
        let components = g.component_count();
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(g)
    }

    /// A single vertex and no edges.
    pub fn point() -> Self {
        MultiGraph::new(1, []).expect("a point is connected")
    }

    pub fn with_lengths(mut self, lengths: Vec<f64>) -> Result<Self, GraphError> {
        if lengths.len() != self.edge_count() {
            return Err(GraphError::LengthCount {
                expected: self.edge_count(),
                got: lengths.len(),
            });
        }
        for (edge, &length) in lengths.iter().enumerate() {
            if !(length > 0.0 && length.is_finite()) {
                return Err(GraphError::NonPositiveLength { edge, length });
            }
        }
        self.lengths = Some(lengths);
        Ok(self)
    }

    pub fn without_lengths(mut self) -> Self {
        self.lengths = None;
        self
    }

    pub fn with_labels(
        mut self,
        vertex_labels: Vec<String>,
        edge_labels: Vec<String>,
    ) -> Result<Self, GraphError> {
        check_labels("vertex", &vertex_labels, self.vertex_count())?;
        check_labels("edge", &edge_labels, self.edge_count())?;
        self.vertex_labels = vertex_labels;
        self.edge_labels = edge_labels;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.darts_at.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.ends.len()
    }

    pub fn ends(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e]
    }

    pub fn all_ends(&self) -> &[[VertexId; 2]] {
        &self.ends
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [a, b] = self.ends[e];
        a == b
    }

    /// The vertex a dart is attached to.
    pub fn dart_vertex(&self, d: Dart) -> VertexId {
        self.ends[d.edge()][d.end_index()]
    }

    /// Darts owned by `v`, in ascending dart order.
    pub fn darts_at(&self, v: VertexId) -> &[Dart] {
        &self.darts_at[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.darts_at[v].len()
    }

    pub fn lengths(&self) -> Option<&[f64]> {
        self.lengths.as_deref()
    }

    pub fn is_metric(&self) -> bool {
        self.lengths.is_some()
    }

    /// Edge length, 1 for non-metric graphs.
    pub fn length(&self, e: EdgeId) -> f64 {
        self.lengths.as_ref().map_or(1.0, |l| l[e])
    }

    pub fn total_length(&self) -> f64 {
        (0..self.edge_count()).map(|e| self.length(e)).sum()
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertex_labels[v]
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edge_labels[e]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn edge_by_label(&self, label: &str) -> Option<EdgeId> {
        self.edge_labels.iter().position(|l| l == label)
    }

    /// The other end of `e` as seen from `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Number of generating cycles, `m - n + 1`.
    pub fn generating_cycle_count(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.generating_cycle_count() == 0
    }

    /// Loops count twice toward their vertex.
    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        let first = degrees[0];
        let constant_order = degrees.iter().all(|&d| d == first).then_some(first);
        DegreeProfile {
            is_cubic: constant_order == Some(3),
            constant_order,
            degrees,
        }
    }

    /// Breadth-first spanning tree rooted at vertex 0, scanning darts in id order.
    pub fn spanning_tree(&self) -> SpanningTree {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; self.edge_count()];
        let mut parent_edge = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut tree_edges = Vec::with_capacity(n - 1);
        seen[0] = true;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &d in &self.darts_at[v] {
                let e = d.edge();
                let w = self.dart_vertex(d.partner());
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    parent_edge[w] = Some(e);
                    tree_edges.push(e);
                    order.push(w);
                }
            }
        }
        let non_tree_edges = (0..self.edge_count()).filter(|&e| !in_tree[e]).collect();
        SpanningTree {
            tree_edges,
            non_tree_edges,
            parent_edge,
            order,
        }
    }

    /// Blocks (2-connected components) as sorted edge lists. Every loop is its
    /// own block; bridges are single-edge blocks.
    pub fn two_connected_components(&self) -> Vec<Vec<EdgeId>> {
        blocks::blocks(self)
    }

    pub fn cyclic_part(&self) -> CyclicPart {
        cyclic::cyclic_part(self)
    }

    /// True when the graph equals its own cyclic part: no vertex of degree
    /// 1 or 2, unless the graph is a point or a single loop.
    pub fn is_cyclic(&self) -> bool {
        let n = self.vertex_count();
        let m = self.edge_count();
        if n == 1 && m <= 1 {
            return true;
        }
        (0..n).all(|v| self.degree(v) >= 3)
    }

    /// Contracts the given non-loop edges, merging their endpoints. Remaining
    /// edges keep their relative order, labels and lengths.
    pub fn contract(&self, edges: &[EdgeId]) -> Result<MultiGraph, GraphError> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let contracted: HashSet<EdgeId> = edges.iter().copied().collect();
        for &e in edges {
            if e >= self.edge_count() {
                return Err(GraphError::BadContraction(e));
            }
            let [a, b] = self.ends[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(GraphError::BadContraction(e));
            }
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut new_id = vec![usize::MAX; n];
        let mut labels = Vec::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            if new_id[r] == usize::MAX {
                new_id[r] = labels.len();
                labels.push(self.vertex_labels[r].clone());
            }
        }
        let kept: Vec<EdgeId> = (0..self.edge_count())
            .filter(|e| !contracted.contains(e))
            .collect();
        let new_edges: Vec<(VertexId, VertexId)> = kept
            .iter()
            .map(|&e| {
                let [a, b] = self.ends[e];
                (new_id[find(&mut parent, a)], new_id[find(&mut parent, b)])
            })
            .collect();
        let mut g = MultiGraph::new(labels.len(), new_edges)?.with_labels(
            labels,
            kept.iter().map(|&e| self.edge_labels[e].clone()).collect(),
        )?;
        if let Some(lengths) = &self.lengths {
            g = g.with_lengths(kept.iter().map(|&e| lengths[e]).collect())?;
        }
        Ok(g)
    }

    /// Structural isomorphism (loops and multiplicities respected, labels and
    /// lengths ignored).
    pub fn is_isomorphic(&self, other: &MultiGraph) -> bool {
        iso::isomorphic(self, other)
    }

    fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &d in &self.darts_at[v] {
                    let w = self.dart_vertex(d.partner());
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

fn check_labels(what: &'static str, labels: &[String], expected: usize) -> Result<(), GraphError> {
    if labels.len() != expected {
        return Err(GraphError::LabelCount {
            what,
            expected,
            got: labels.len(),
        });
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(GraphError::DuplicateLabel {
                what,
                label: l.clone(),
            });
        }
    }
    Ok(())
}

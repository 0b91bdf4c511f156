//! Named graph families and an exhaustive generator of small connected
//! multigraphs.

use std::collections::HashMap;

use super::{MultiGraph, VertexId};

fn build(n: usize, edges: Vec<(VertexId, VertexId)>) -> MultiGraph {
    MultiGraph::new(n, edges).expect("catalog graphs are connected")
}

/// Path with `n` vertices.
pub fn path(n: usize) -> MultiGraph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// Cycle with `n` vertices; `n = 1` is a single loop, `n = 2` a digon.
pub fn cycle(n: usize) -> MultiGraph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// Star with a centre (vertex 0) and `leaves` leaves.
pub fn star(leaves: usize) -> MultiGraph {
    build(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
}

/// One vertex with `k` loops.
pub fn rose(k: usize) -> MultiGraph {
    build(1, vec![(0, 0); k])
}

/// Two vertices joined by `k` parallel edges.
pub fn theta(k: usize) -> MultiGraph {
    build(2, vec![(0, 1); k])
}

/// Triangle 0-1-2 (edges 0, 1, 2) with a pendant edge 2-3 (edge 3).
pub fn tadpole() -> MultiGraph {
    build(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)])
}

/// Two triangles glued at vertex 0.
pub fn two_triangles_sharing_vertex() -> MultiGraph {
    build(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
}

pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    build(n, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    complete_multipartite(&[a, b])
}

pub fn complete_multipartite(parts: &[usize]) -> MultiGraph {
    let mut part_of = Vec::new();
    for (p, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, size));
    }
    let n = part_of.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if part_of[i] != part_of[j] {
                edges.push((i, j));
            }
        }
    }
    build(n, edges)
}

/// Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
pub fn petersen() -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, edges)
}

/// Prism over a `k`-cycle (cubic, `2k` vertices).
pub fn prism(k: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    build(2 * k, edges)
}

/// All connected multigraphs (loops and parallel edges allowed) with at most
/// `max_edges` edges, one per isomorphism class, ordered by edge count.
///
/// Every connected graph with `m + 1` edges loses either a non-bridge edge or
/// a pendant edge and stays connected, so augmenting the level-`m` classes by
/// one edge (between existing vertices, or to a new leaf) reaches every class
/// of level `m + 1`.
pub fn connected_multigraphs(max_edges: usize) -> Vec<MultiGraph> {
    let mut all = vec![MultiGraph::point()];
    let mut level = vec![MultiGraph::point()];
    for _ in 0..max_edges {
        let mut buckets: HashMap<(usize, Vec<(usize, usize)>), Vec<MultiGraph>> = HashMap::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.vertex_count();
            let base: Vec<(VertexId, VertexId)> =
                g.all_ends().iter().map(|&[a, b]| (a, b)).collect();
            let mut candidates = Vec::new();
            for i in 0..n {
                for j in i..n {
                    let mut edges = base.clone();
                    edges.push((i, j));
                    candidates.push(build(n, edges));
                }
                let mut edges = base.clone();
                edges.push((i, n));
                candidates.push(build(n + 1, edges));
            }
            for c in candidates {
                let key = bucket_key(&c);
                let bucket = buckets.entry(key).or_default();
                if !bucket.iter().any(|h| h.is_isomorphic(&c)) {
                    bucket.push(c.clone());
                    next.push(c);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn bucket_key(g: &MultiGraph) -> (usize, Vec<(usize, usize)>) {
    let mut profile: Vec<(usize, usize)> = (0..g.vertex_count())
        .map(|v| {
            let loops = g.darts_at(v).iter().filter(|d| g.is_loop(d.edge())).count() / 2;
            (g.degree(v), loops)
        })
        .collect();
    profile.sort_unstable();
    (g.vertex_count(), profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!(p.degree_profile().is_cubic);
        let k33 = complete_bipartite(3, 3);
        assert_eq!((k33.vertex_count(), k33.edge_count()), (6, 9));
        let k222 = complete_multipartite(&[2, 2, 2]);
        assert_eq!(k222.edge_count(), 12);
        assert_eq!(complete(5).edge_count(), 10);
    }

    #[test]
    fn small_counts_match_hand_enumeration() {
        let gs = connected_multigraphs(2);
        let by_m = |m: usize| gs.iter().filter(|g| g.edge_count() == m).count();
        // m = 1: a loop, an edge.
        assert_eq!(by_m(1), 2);
        // m = 2: rose(2), digon, path P3, edge with a loop at one end.
        assert_eq!(by_m(2), 4);
        for (i, g) in gs.iter().enumerate() {
            for h in &gs[i + 1..] {
                assert!(!g.is_isomorphic(h));
            }
        }
    }
}

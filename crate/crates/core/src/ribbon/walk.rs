use super::{EmbeddingScheme, SchemeError};
use crate::multigraph::{Dart, MultiGraph};

/// Rebuilds a one-face scheme whose boundary is the given closed walk.
///
/// `walk[i]` is the dart along which the walk leaves its `i`-th corner. At
/// every corner the incoming dart (partner of the previous step) and the
/// outgoing dart are neighbours in the rotation, so the corners at a vertex
/// link its darts into a single cycle, which is the rotation. The side flags
/// are forced at vertices of degree at least 3; the rest, and the edge
/// signatures, come from a linear system over `Z₂`.
pub fn scheme_from_walk(graph: &MultiGraph, walk: &[Dart]) -> Result<EmbeddingScheme, SchemeError> {
    let m = graph.edge_count();
    let len = walk.len();
    if len != 2 * m {
        return Err(SchemeError::BadWalk(format!(
            "walk has {len} steps, expected {}",
            2 * m
        )));
    }
    if m == 0 {
        return Ok(EmbeddingScheme::default_for(graph.clone()));
    }
    let mut uses = vec![Vec::new(); m];
    for (i, d) in walk.iter().enumerate() {
        if d.0 >= graph.dart_count() {
            return Err(SchemeError::BadWalk(format!("unknown dart {}", d.0)));
        }
        uses[d.edge()].push(i);
    }
    if let Some(e) = uses.iter().position(|u| u.len() != 2) {
        return Err(SchemeError::BadWalk(format!(
            "edge {e} is traversed {} times",
            uses[e].len()
        )));
    }

    // corner i sits between step i-1 and step i
    let corner = |i: usize| (walk[(i + len - 1) % len].partner(), walk[i]);
    let mut links = vec![Vec::new(); graph.dart_count()];
    for i in 0..len {
        let (a, b) = corner(i);
        if graph.dart_vertex(a) != graph.dart_vertex(b) {
            return Err(SchemeError::BadWalk(format!(
                "steps {} and {i} do not meet",
                (i + len - 1) % len
            )));
        }
        links[a.0].push(b);
        links[b.0].push(a);
    }

    let mut rotation = Vec::with_capacity(graph.vertex_count());
    for v in 0..graph.vertex_count() {
        let darts = graph.darts_at(v);
        let k = darts.len();
        let mut rot = vec![darts[0]];
        let mut prev = None;
        let mut cur = darts[0];
        while rot.len() < k {
            let nb = &links[cur.0];
            let nxt = if Some(nb[0]) == prev { nb[1] } else { nb[0] };
            if rot.contains(&nxt) {
                return Err(SchemeError::BadWalk(format!("walk pinches vertex {v}")));
            }
            rot.push(nxt);
            prev = Some(cur);
            cur = nxt;
        }
        if k >= 2 && !links[cur.0].contains(&darts[0]) {
            return Err(SchemeError::BadWalk(format!("walk pinches vertex {v}")));
        }
        rotation.push(rot);
    }

    let mut next = vec![Dart(0); graph.dart_count()];
    for rot in &rotation {
        for (i, &d) in rot.iter().enumerate() {
            next[d.0] = rot[(i + 1) % rot.len()];
        }
    }

    // Unknowns: one side flag per corner. Known flags become unit rows; each
    // edge contributes flag(a) + flag(a+1) + flag(b) + flag(b+1) = 0 for its
    // two traversals a, b.
    let mut rows: Vec<(Vec<bool>, bool)> = Vec::new();
    for i in 0..len {
        let (a, b) = corner(i);
        if graph.degree(graph.dart_vertex(a)) >= 3 {
            let mut row = vec![false; len];
            row[i] = true;
            rows.push((row, next[a.0] != b));
        }
    }
    for u in &uses {
        let mut row = vec![false; len];
        for &t in u {
            row[t] ^= true;
            row[(t + 1) % len] ^= true;
        }
        rows.push((row, false));
    }
    // A walk that repeats itself halfway must come back on the other side,
    // otherwise it would close up after one lap.
    let half = len / 2;
    if (0..half).all(|i| walk[i] == walk[i + half]) {
        let mut row = vec![false; len];
        row[0] = true;
        row[half] = true;
        rows.push((row, true));
    }
    let flags = solve_gf2(rows, len)
        .ok_or_else(|| SchemeError::BadWalk("no consistent band twists".into()))?;
    let signature: Vec<bool> = uses
        .iter()
        .map(|u| flags[u[0]] ^ flags[(u[0] + 1) % len])
        .collect();

    let scheme = EmbeddingScheme::new(graph.clone(), rotation, signature)?;
    let faces = scheme.faces();
    if faces.len() != 1 || !is_cyclic_shift(&faces[0].darts(), walk) {
        return Err(SchemeError::BadWalk(
            "rebuilt scheme does not reproduce the walk".into(),
        ));
    }
    Ok(scheme)
}

fn is_cyclic_shift(a: &[Dart], b: &[Dart]) -> bool {
    let reversed: Vec<Dart> = b.iter().rev().map(|d| d.partner()).collect();
    let n = a.len();
    n == b.len()
        && (0..n).any(|k| {
            (0..n).all(|i| a[(i + k) % n] == b[i]) || (0..n).all(|i| a[(i + k) % n] == reversed[i])
        })
}

/// Gaussian elimination over `Z₂`; free variables are set to 0.
fn solve_gf2(mut rows: Vec<(Vec<bool>, bool)>, vars: usize) -> Option<Vec<bool>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..vars {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[c]) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0[c] {
                for (x, &y) in row.0.iter_mut().zip(&pivot.0) {
                    *x ^= y;
                }
                row.1 ^= pivot.1;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row.1) {
        return None;
    }
    let mut x = vec![false; vars];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i].1;
    }
    Some(x)
}

/// Token of a boundary word: vertex and edge renumbered by first appearance,
/// and whether this traversal runs the same way as the edge's first one.
pub type WordToken = (usize, usize, bool);

/// Invariant of a one-face scheme under graph relabelling, vertex switching,
/// choice of starting corner and direction of reading.
pub fn canonical_boundary_word(scheme: &EmbeddingScheme) -> Result<Vec<WordToken>, SchemeError> {
    let walk: Vec<Dart> = scheme.boundary_walk()?.iter().map(|w| w.dart).collect();
    let g = scheme.graph();
    let len = walk.len();
    let reversed: Vec<Dart> = walk.iter().rev().map(|d| d.partner()).collect();
    let mut best: Option<Vec<WordToken>> = None;
    for w in [&walk, &reversed] {
        for k in 0..len.max(1) {
            let word = relabel(g, (0..len).map(|i| w[(i + k) % len]));
            if best.as_ref().is_none_or(|b| word < *b) {
                best = Some(word);
            }
        }
    }
    Ok(best.unwrap_or_default())
}

fn relabel(g: &MultiGraph, darts: impl Iterator<Item = Dart>) -> Vec<WordToken> {
    let mut vmap = vec![usize::MAX; g.vertex_count()];
    let mut emap = vec![usize::MAX; g.edge_count()];
    let mut first_dir = vec![false; g.edge_count()];
    let (mut nv, mut ne) = (0, 0);
    darts
        .map(|d| {
            let v = g.dart_vertex(d);
            if vmap[v] == usize::MAX {
                vmap[v] = nv;
                nv += 1;
            }
            let e = d.edge();
            if emap[e] == usize::MAX {
                emap[e] = ne;
                ne += 1;
                first_dir[e] = d.is_plus();
            }
            (vmap[v], emap[e], d.is_plus() == first_dir[e])
        })
        .collect()
}

/// Whether two one-face schemes have the same boundary word, i.e. describe
/// the same strip up to relabelling the graph.
pub fn same_strip(a: &EmbeddingScheme, b: &EmbeddingScheme) -> Result<bool, SchemeError> {
    Ok(canonical_boundary_word(a)? == canonical_boundary_word(b)?)
}

use super::{EdgeId, MultiGraph};

/// Hopcroft–Tarjan block decomposition over edges. The DFS skips only the
/// edge it arrived by, so a parallel edge back to the parent is a back edge.
pub(super) fn blocks(g: &MultiGraph) -> Vec<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut out: Vec<Vec<EdgeId>> = Vec::new();

    // frame: (vertex, edge we arrived by, next dart index to scan)
    let mut frames: Vec<(usize, Option<EdgeId>, usize)> = vec![(0, None, 0)];
    disc[0] = time;
    low[0] = time;
    time += 1;

    while let Some(&mut (v, via, ref mut next)) = frames.last_mut() {
        let darts = g.darts_at(v);
        if *next < darts.len() {
            let d = darts[*next];
            *next += 1;
            let e = d.edge();
            if g.is_loop(e) || Some(e) == via {
                continue;
            }
            let w = g.dart_vertex(d.partner());
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                edge_stack.push(e);
                frames.push((w, Some(e), 0));
            } else if disc[w] < disc[v] {
                edge_stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            frames.pop();
            if let (Some(e), Some(&(parent, _, _))) = (via, frames.last()) {
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    let mut block = Vec::new();
                    while let Some(top) = edge_stack.pop() {
                        block.push(top);
                        if top == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    out.push(block);
                }
            }
        }
    }

    for e in 0..g.edge_count() {
        if g.is_loop(e) {
            out.push(vec![e]);
        }
    }
    out.sort_by_key(|b| b[0]);
    out
}

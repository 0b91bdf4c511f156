use super::MultiGraph;

/// Multiplicity matrix: `a[u][v]` counts edges between `u` and `v`, loops on
/// the diagonal.
fn multiplicities(g: &MultiGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut a = vec![vec![0u32; n]; n];
    for &[u, v] in g.all_ends() {
        a[u][v] += 1;
        if u != v {
            a[v][u] += 1;
        }
    }
    a
}

fn invariant(g: &MultiGraph, a: &[Vec<u32>], v: usize) -> (usize, u32, Vec<usize>) {
    let mut nbr: Vec<usize> = (0..g.vertex_count())
        .filter(|&w| w != v)
        .flat_map(|w| std::iter::repeat_n(g.degree(w), a[v][w] as usize))
        .collect();
    nbr.sort_unstable();
    (g.degree(v), a[v][v], nbr)
}

pub(super) fn isomorphic(g: &MultiGraph, h: &MultiGraph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (ag, ah) = (multiplicities(g), multiplicities(h));
    let ig: Vec<_> = (0..n).map(|v| invariant(g, &ag, v)).collect();
    let ih: Vec<_> = (0..n).map(|v| invariant(h, &ah, v)).collect();
    let (mut sg, mut sh) = (ig.clone(), ih.clone());
    sg.sort();
    sh.sort();
    if sg != sh {
        return false;
    }

    // Assign vertices of g in BFS order so each new vertex is constrained by
    // already-mapped neighbours.
    let order = g.spanning_tree().order;
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        k: usize,
        order: &[usize],
        ig: &[(usize, u32, Vec<usize>)],
        ih: &[(usize, u32, Vec<usize>)],
        ag: &[Vec<u32>],
        ah: &[Vec<u32>],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..ih.len() {
            if used[w] || ig[v] != ih[w] {
                continue;
            }
            let consistent = order[..k].iter().all(|&u| ag[v][u] == ah[w][image[u]]);
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if extend(k + 1, order, ig, ih, ag, ah, image, used) {
                return true;
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
        false
    }

    extend(0, &order, &ig, &ih, &ag, &ah, &mut image, &mut used)
}

#[cfg(test)]
mod tests {
    use crate::multigraph::{catalog, MultiGraph};

    #[test]
    fn relabelled_graphs_are_isomorphic() {
        let g = MultiGraph::new(3, [(0, 1), (1, 2), (2, 2), (0, 1)]).unwrap();
        let h = MultiGraph::new(3, [(2, 1), (1, 0), (0, 0), (2, 1)]).unwrap();
        assert!(g.is_isomorphic(&h));
    }

    #[test]
    fn loops_and_multiplicities_matter() {
        let dumbbell = MultiGraph::new(2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(!dumbbell.is_isomorphic(&catalog::theta(3)));
        let petersen = catalog::petersen();
        assert!(petersen.is_isomorphic(&petersen));
        assert!(!petersen.is_isomorphic(&catalog::prism(5)));
    }
}

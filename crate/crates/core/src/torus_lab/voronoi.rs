use serde::Serialize;

use super::extract::{arc_confidence, CutLocusGraph};
use super::{add, cross, dot, norm, scale, sub, FlatTorus, Point, TorusError};
use crate::multigraph::{Dart, MultiGraph};
use crate::ribbon::scheme_from_walk;

/// The Voronoi cell of the lattice point 0, as a convex polygon in
/// counter-clockwise order. Side `i` runs from `corners[i]` to
/// `corners[i + 1]` and lies on the bisector of 0 and `neighbors[i]`, given in
/// lattice coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VoronoiCell {
    pub corners: Vec<Point>,
    pub neighbors: Vec<[i64; 2]>,
}

fn clip(poly: &[Point], normal: Point, offset: f64) -> Vec<Point> {
    let inside = |p: Point| dot(p, normal) <= offset;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (k, &p) in poly.iter().enumerate() {
        let q = poly[(k + 1) % poly.len()];
        let (pi, qi) = (inside(p), inside(q));
        if pi {
            out.push(p);
        }
        if pi != qi {
            let (dp, dq) = (dot(p, normal) - offset, dot(q, normal) - offset);
            out.push(add(p, scale(sub(q, p), dp / (dp - dq))));
        }
    }
    out
}

/// Sutherland–Hodgman clipping of a large square by the bisectors of the
/// eight neighbours of a reduced basis.
pub fn voronoi_cell(t: &FlatTorus) -> VoronoiCell {
    let [b1, b2] = t.basis();
    let big = 4.0 * (norm(b1) + norm(b2));
    let mut poly = vec![[-big, -big], [big, -big], [big, big], [-big, big]];
    let mut neighbours = Vec::new();
    for i in -1i64..=1 {
        for j in -1i64..=1 {
            if (i, j) != (0, 0) {
                neighbours.push([i, j]);
            }
        }
    }
    for &[i, j] in &neighbours {
        let l = t.lattice_vector(i, j);
        poly = clip(&poly, l, dot(l, l) / 2.0);
    }
    let tol = 1e-9 * norm(b1);
    // drop repeated and collinear corners left by bisectors through a corner
    let mut corners: Vec<Point> = Vec::new();
    for p in poly {
        if corners.last().is_none_or(|&q| norm(sub(p, q)) > tol) {
            corners.push(p);
        }
    }
    while corners.len() > 1 && norm(sub(corners[0], *corners.last().unwrap())) <= tol {
        corners.pop();
    }
    let mut k = 0;
    while k < corners.len() && corners.len() > 3 {
        let n = corners.len();
        let (a, b, c) = (corners[(k + n - 1) % n], corners[k], corners[(k + 1) % n]);
        if cross(sub(b, a), sub(c, b)).abs() <= tol * norm(sub(c, a)) {
            corners.remove(k);
        } else {
            k += 1;
        }
    }
    let n = corners.len();
    let side_neighbours = (0..n)
        .map(|k| {
            let (p, q) = (corners[k], corners[(k + 1) % n]);
            *neighbours
                .iter()
                .min_by(|x, y| {
                    let miss = |&[i, j]: &[i64; 2]| {
                        let l = t.lattice_vector(i, j);
                        let h = dot(l, l) / 2.0;
                        (dot(p, l) - h).abs() + (dot(q, l) - h).abs()
                    };
                    miss(x).total_cmp(&miss(y))
                })
                .expect("eight neighbours")
        })
        .collect();
    VoronoiCell {
        corners,
        neighbors: side_neighbours,
    }
}

/// Exact cut locus of `x` on a flat torus: the Voronoi cell boundary with
/// corners grouped by lattice translation and opposite sides glued. The
/// natural structure is read off from the counter-clockwise walk around the
/// cell.
pub fn torus_voronoi_cutlocus(t: &FlatTorus, x: Point) -> Result<CutLocusGraph, TorusError> {
    if !t.is_flat() {
        return Err(TorusError::BumpPresent);
    }
    let cell = voronoi_cell(t);
    let p = cell.corners.len();
    let tol = 1e-9;
    let same_class = |a: Point, b: Point| {
        let c = t.to_lattice(sub(a, b));
        (c[0] - c[0].round()).abs() < tol && (c[1] - c[1].round()).abs() < tol
    };
    let mut class = vec![usize::MAX; p];
    let mut positions: Vec<Point> = Vec::new();
    for i in 0..p {
        if let Some(j) = (0..i).find(|&j| same_class(cell.corners[i], cell.corners[j])) {
            class[i] = class[j];
        } else {
            class[i] = positions.len();
            positions.push(add(x, cell.corners[i]));
        }
    }
    let mut edge_of_side = vec![usize::MAX; p];
    let mut walk = Vec::with_capacity(p);
    let mut ends = Vec::new();
    let mut arcs = Vec::new();
    let mut primary = Vec::new();
    for i in 0..p {
        let [a, b] = cell.neighbors[i];
        if edge_of_side[i] != usize::MAX {
            continue;
        }
        let partner = (0..p)
            .find(|&j| cell.neighbors[j] == [-a, -b])
            .expect("Voronoi sides come in opposite pairs");
        let e = ends.len();
        edge_of_side[i] = e;
        edge_of_side[partner] = e;
        primary.push(i);
        ends.push((class[i], class[(i + 1) % p]));
        arcs.push(vec![
            add(x, cell.corners[i]),
            add(x, cell.corners[(i + 1) % p]),
        ]);
    }
    for i in 0..p {
        let e = edge_of_side[i];
        walk.push(if primary[e] == i {
            Dart::plus(e)
        } else {
            Dart::minus(e)
        });
    }
    let lengths: Vec<f64> = arcs.iter().map(|a| norm(sub(a[1], a[0]))).collect();
    let vertex_labels = (0..positions.len()).map(|v| format!("y{v}")).collect();
    let edge_labels = (0..ends.len()).map(|e| format!("c{e}")).collect();
    let graph = MultiGraph::new(positions.len(), ends)?
        .with_lengths(lengths.clone())?
        .with_labels(vertex_labels, edge_labels)?;
    let clns = scheme_from_walk(&graph, &walk)?;
    let epsilon = lengths.iter().cloned().fold(f64::INFINITY, f64::min) / 2.0;
    let confidence = arc_confidence(&graph, &arcs, epsilon, None);
    Ok(CutLocusGraph {
        source: x,
        graph,
        positions,
        arcs,
        ridge_points: Vec::new(),
        clns,
        epsilon,
        confidence,
        exact: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: a point is a Voronoi corner when it is equidistant
    /// from at least three lattice points and no lattice point is closer.
    fn corner_count_oracle(t: &FlatTorus) -> usize {
        let cell = voronoi_cell(t);
        cell.corners
            .iter()
            .filter(|&&c| {
                let d0 = norm(c);
                let mut ties = 0;
                for i in -3..=3 {
                    for j in -3..=3 {
                        let d = norm(sub(c, t.lattice_vector(i, j)));
                        assert!(d >= d0 - 1e-9);
                        if (d - d0).abs() < 1e-9 {
                            ties += 1;
                        }
                    }
                }
                ties >= 3
            })
            .count()
    }

    #[test]
    fn square_cell() {
        let t = FlatTorus::square(1.0).unwrap();
        let cell = voronoi_cell(&t);
        assert_eq!(cell.corners.len(), 4);
        assert_eq!(corner_count_oracle(&t), 4);
        let c = torus_voronoi_cutlocus(&t, [0.3, 0.1]).unwrap();
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_count(), 2);
        assert!(c.graph.is_loop(0) && c.graph.is_loop(1));
        assert_eq!(c.degree_profile(), vec![4]);
        assert!((c.total_length() - 2.0).abs() < 1e-12);
        assert!(c.clns.is_cl_structure());
        assert!(c.clns.is_orientable());
        assert_eq!(c.cycle_rank(), 2);
        assert!((c.epsilon - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hexagonal_cell_is_a_theta() {
        let t = FlatTorus::hexagonal(1.0).unwrap();
        assert_eq!(voronoi_cell(&t).corners.len(), 6);
        assert_eq!(corner_count_oracle(&t), 6);
        let c = torus_voronoi_cutlocus(&t, [0.0, 0.0]).unwrap();
        assert_eq!(c.degree_profile(), vec![3, 3]);
        assert_eq!(c.graph.edge_count(), 3);
        assert!(c.graph.is_isomorphic(&crate::multigraph::catalog::theta(3)));
        for e in 0..3 {
            assert!((c.graph.length(e) - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
        assert!(c.clns.is_cl_structure() && c.clns.is_orientable());
        assert_eq!(c.cycle_rank(), 2);
    }

    #[test]
    fn rectangle_loops_have_side_lengths() {
        let t = FlatTorus::rectangular(1.0, 2.0).unwrap();
        let c = torus_voronoi_cutlocus(&t, [0.0, 0.0]).unwrap();
        assert_eq!(c.degree_profile(), vec![4]);
        let mut l: Vec<f64> = (0..2).map(|e| c.graph.length(e)).collect();
        l.sort_by(f64::total_cmp);
        assert!((l[0] - 1.0).abs() < 1e-12 && (l[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn skewed_lattices_are_generic() {
        // a generic lattice has a hexagonal cell, so a cubic cut locus
        for (b1, b2) in [
            ([1.0, 0.0], [0.3, 1.1]),
            ([2.0, 0.1], [-0.7, 1.3]),
            ([1.0, 0.0], [3.2, 0.9]),
        ] {
            let t = FlatTorus::new(b1, b2).unwrap();
            assert_eq!(corner_count_oracle(&t), 6);
            let c = torus_voronoi_cutlocus(&t, [0.1, 0.2]).unwrap();
            assert_eq!(c.degree_profile(), vec![3, 3]);
            assert_eq!(c.cycle_rank(), 2);
            // the glued cell has area equal to the torus
            let cell = voronoi_cell(&t);
            let n = cell.corners.len();
            let area: f64 = (0..n)
                .map(|k| cross(cell.corners[k], cell.corners[(k + 1) % n]))
                .sum::<f64>()
                / 2.0;
            assert!((area - t.area()).abs() < 1e-12);
        }
    }

    #[test]
    fn bump_is_refused() {
        let t = FlatTorus::square(1.0)
            .unwrap()
            .with_bump(super::super::Bump {
                center: [0.5, 0.5],
                radius: 0.1,
                height: 0.3,
            })
            .unwrap();
        assert_eq!(
            torus_voronoi_cutlocus(&t, [0.0, 0.0]).unwrap_err(),
            TorusError::BumpPresent
        );
    }
}

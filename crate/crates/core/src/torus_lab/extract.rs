use serde::Serialize;

use super::eikonal::DistanceField;
use super::{add, dot, norm, scale, segment_distance, sub, FlatTorus, Point, TorusError};
use crate::multigraph::{Dart, MultiGraph};
use crate::ribbon::{scheme_from_walk, EmbeddingScheme};

/// Junctions closer than this many grid cells are read as one vertex.
const MERGE_CELLS: f64 = 1.5;
/// Arcs leaving a vertex at a smaller angle than this make the degree
/// doubtful.
const SEPARATION_DEGREES: f64 = 15.0;
/// Below this resolution a degree-4 vertex cannot be told apart from two
/// nearby degree-3 vertices.
const DEGREE_FOUR_RESOLUTION: usize = 128;
/// Arc lengths are measured on every fourth ridge point, which irons out
/// most of the staircase.
const LENGTH_STRIDE: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Confidence {
    pub low: bool,
    /// Smallest angle, in degrees, between two arcs leaving a common vertex.
    pub min_separation_degrees: f64,
    /// Number of vertices assembled from more than one grid junction.
    pub merged_junctions: usize,
    pub notes: Vec<String>,
}

/// A cut locus on a torus together with its natural structure.
///
/// Arcs are plane polylines from `ends(e)[0]` to `ends(e)[1]`, unwrapped
/// along their length; vertex positions and arc endpoints agree modulo the
/// lattice. `epsilon` is the inset at which the strip around the cut locus is
/// traced: half the shortest arc.
#[derive(Clone, Debug)]
pub struct CutLocusGraph {
    pub source: Point,
    pub graph: MultiGraph,
    pub positions: Vec<Point>,
    pub arcs: Vec<Vec<Point>>,
    /// Raw ridge samples of a numeric extraction; empty for exact results.
    pub ridge_points: Vec<Point>,
    pub clns: EmbeddingScheme,
    pub epsilon: f64,
    pub confidence: Confidence,
    pub exact: bool,
}

impl CutLocusGraph {
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.graph.vertex_count())
            .map(|v| self.graph.degree(v))
            .collect()
    }

    /// Vertex degrees in decreasing order.
    pub fn degree_profile(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn total_length(&self) -> f64 {
        self.graph.total_length()
    }

    /// `m − n + 1` of the cyclic part.
    pub fn cycle_rank(&self) -> usize {
        self.graph.cyclic_part().graph.generating_cycle_count()
    }
}

fn point_along(poly: &[Point], distance: f64, from_end: bool) -> Point {
    let pts: Vec<Point> = if from_end {
        poly.iter().rev().cloned().collect()
    } else {
        poly.to_vec()
    };
    let mut left = distance;
    for w in pts.windows(2) {
        let l = norm(sub(w[1], w[0]));
        if l >= left && l > 0.0 {
            return add(w[0], scale(sub(w[1], w[0]), left / l));
        }
        left -= l;
    }
    *pts.last().expect("non-empty arc")
}

/// Separation angles of the arcs at each vertex, probed `probe` along each
/// arc, plus the low-resolution refusal for degree-4 vertices.
pub(crate) fn arc_confidence(
    graph: &MultiGraph,
    arcs: &[Vec<Point>],
    probe: f64,
    resolution: Option<usize>,
) -> Confidence {
    let mut directions: Vec<Vec<Point>> = vec![Vec::new(); graph.vertex_count()];
    for (e, arc) in arcs.iter().enumerate() {
        let [a, b] = graph.ends(e);
        let start = sub(point_along(arc, probe, false), arc[0]);
        let end = sub(point_along(arc, probe, true), *arc.last().unwrap());
        directions[a].push(scale(start, 1.0 / norm(start).max(1e-300)));
        directions[b].push(scale(end, 1.0 / norm(end).max(1e-300)));
    }
    let mut min_angle: f64 = 180.0;
    let mut notes = Vec::new();
    let mut low = false;
    for (v, dirs) in directions.iter().enumerate() {
        let mut local: f64 = 180.0;
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                local = local.min(dot(dirs[i], dirs[j]).clamp(-1.0, 1.0).acos().to_degrees());
            }
        }
        if local < SEPARATION_DEGREES {
            low = true;
            notes.push(format!(
                "arcs at {} separate by {local:.1}°, under the {SEPARATION_DEGREES}° threshold",
                graph.vertex_label(v)
            ));
        }
        min_angle = min_angle.min(local);
    }
    if let Some(n) = resolution {
        if n < DEGREE_FOUR_RESOLUTION && (0..graph.vertex_count()).any(|v| graph.degree(v) >= 4) {
            low = true;
            notes.push(format!(
                "resolution {n} is below {DEGREE_FOUR_RESOLUTION}: a degree-4 vertex cannot be told apart from two nearby degree-3 vertices"
            ));
        }
    }
    Confidence {
        low,
        min_separation_degrees: min_angle,
        merged_junctions: 0,
        notes,
    }
}

// Dual-grid directions: right, up, left, down.
const STEP: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

struct Labels<'a> {
    field: &'a DistanceField,
    n: i64,
}

impl Labels<'_> {
    /// Nearest lift of an unwrapped sample, in the unwrapped frame.
    fn lift(&self, i: i64, j: i64) -> [i64; 2] {
        let (ri, rj) = (i.rem_euclid(self.n), j.rem_euclid(self.n));
        let [a, b] = self.field.lift(ri as usize, rj as usize);
        [a + i.div_euclid(self.n), b + j.div_euclid(self.n)]
    }

    /// Samples to the left and right of the dual edge leaving corner
    /// `(i + ½, j + ½)` in direction `d`.
    fn sides(i: i64, j: i64, d: usize) -> ((i64, i64), (i64, i64)) {
        match d {
            0 => ((i + 1, j + 1), (i + 1, j)),
            1 => ((i, j + 1), (i + 1, j + 1)),
            2 => ((i, j), (i, j + 1)),
            _ => ((i + 1, j), (i, j)),
        }
    }

    fn lifts_across(&self, i: i64, j: i64, d: usize) -> ([i64; 2], [i64; 2]) {
        let (l, r) = Self::sides(i, j, d);
        (self.lift(l.0, l.1), self.lift(r.0, r.1))
    }

    fn is_boundary(&self, i: i64, j: i64, d: usize) -> bool {
        let (l, r) = self.lifts_across(i, j, d);
        l != r
    }

    fn edge_key(&self, i: i64, j: i64, d: usize) -> usize {
        let (i, j, o) = match d {
            0 => (i, j, 0),
            1 => (i, j, 1),
            2 => (i - 1, j, 0),
            _ => (i, j - 1, 1),
        };
        let n = self.n;
        (2 * (j.rem_euclid(n) * n + i.rem_euclid(n)) + o) as usize
    }

    fn degree(&self, i: i64, j: i64) -> usize {
        (0..4).filter(|&d| self.is_boundary(i, j, d)).count()
    }
}

struct Chain {
    start: (i64, i64),
    end: (i64, i64),
    corners: Vec<(i64, i64)>,
    left: [i64; 2],
    right: [i64; 2],
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Reads the cut locus off a distance field as the boundaries between
/// regions served by different lifts of the source. Grid junctions within
/// three cells are merged into one vertex, chains between them become arcs,
/// and the natural structure is the walk around the region of the source
/// itself, ordered by angle.
pub fn extract_cut_locus(field: &DistanceField) -> Result<CutLocusGraph, TorusError> {
    let n = field.resolution() as i64;
    let torus = field.torus();
    let labels = Labels { field, n };
    let corner_point = |(i, j): (i64, i64)| field.position(i as f64 + 0.5, j as f64 + 0.5);

    let mut junctions = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if labels.degree(i, j) >= 3 {
                junctions.push((i, j));
            }
        }
    }
    if junctions.is_empty() {
        return Err(TorusError::RidgeWithoutJunction);
    }

    let mut visited = vec![false; (2 * n * n) as usize];
    let mut chains = Vec::new();
    for &(si, sj) in &junctions {
        for d0 in 0..4 {
            if !labels.is_boundary(si, sj, d0) || visited[labels.edge_key(si, sj, d0)] {
                continue;
            }
            let (left, right) = labels.lifts_across(si, sj, d0);
            let mut corners = vec![(si, sj)];
            let (mut i, mut j, mut d) = (si, sj, d0);
            loop {
                visited[labels.edge_key(i, j, d)] = true;
                i += STEP[d].0;
                j += STEP[d].1;
                corners.push((i, j));
                if labels.degree(i, j) != 2 {
                    break;
                }
                let back = (d + 2) % 4;
                d = (0..4)
                    .find(|&k| k != back && labels.is_boundary(i, j, k))
                    .expect("degree-two corner continues");
            }
            chains.push(Chain {
                start: (si, sj),
                end: (i, j),
                corners,
                left,
                right,
            });
        }
    }
    if visited.iter().enumerate().any(|(k, &seen)| {
        !seen && {
            let (cell, o) = (k as i64 / 2, (k % 2));
            labels.is_boundary(cell % n, cell / n, o)
        }
    }) {
        return Err(TorusError::RidgeWithoutJunction);
    }

    // merge nearby junctions
    let merge = MERGE_CELLS * field.spacing();
    let points: Vec<Point> = junctions.iter().map(|&c| corner_point(c)).collect();
    let mut parent: Vec<usize> = (0..junctions.len()).collect();
    for a in 0..junctions.len() {
        for b in a + 1..junctions.len() {
            if torus.flat_distance(points[a], points[b]) < merge {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut cluster_of = vec![usize::MAX; junctions.len()];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for a in 0..junctions.len() {
        let r = find(&mut parent, a);
        if cluster_of[r] == usize::MAX {
            cluster_of[r] = members.len();
            members.push(Vec::new());
        }
        cluster_of[a] = cluster_of[r];
        members[cluster_of[a]].push(a);
    }
    let junction_index = |c: (i64, i64)| {
        let c = (c.0.rem_euclid(n), c.1.rem_euclid(n));
        junctions
            .binary_search_by(|&(i, j)| (j, i).cmp(&(c.1, c.0)))
            .expect("chain ends at a junction")
    };
    let positions: Vec<Point> = members
        .iter()
        .map(|m| {
            let base = points[m[0]];
            let sum = m
                .iter()
                .fold([0.0, 0.0], |acc, &a| add(acc, torus.wrap(points[a], base)));
            add(base, scale(sum, 1.0 / m.len() as f64))
        })
        .collect();

    let metric_length = |poly: &[Point]| {
        let mut idx: Vec<usize> = (0..poly.len()).step_by(LENGTH_STRIDE).collect();
        if *idx.last().unwrap() != poly.len() - 1 {
            idx.push(poly.len() - 1);
        }
        idx.windows(2)
            .map(|w| {
                let (a, b) = (poly[w[0]], poly[w[1]]);
                norm(sub(b, a)) * torus.conformal_exponent(scale(add(a, b), 0.5)).exp()
            })
            .sum::<f64>()
    };

    let mut ends = Vec::new();
    let mut arcs: Vec<Vec<Point>> = Vec::new();
    let mut lengths = Vec::new();
    let mut sides = Vec::new();
    let mut ridge_points = Vec::new();
    for chain in &chains {
        let poly: Vec<Point> = chain.corners.iter().map(|&c| corner_point(c)).collect();
        for w in poly.windows(2) {
            ridge_points.push(scale(add(w[0], w[1]), 0.5));
        }
        let (a, b) = (
            cluster_of[junction_index(chain.start)],
            cluster_of[junction_index(chain.end)],
        );
        let length = metric_length(&poly);
        let shift = torus.to_lattice(sub(*poly.last().unwrap(), poly[0]));
        let closes = shift[0].round() == 0.0 && shift[1].round() == 0.0;
        if a == b && closes && length <= 4.0 * merge {
            continue;
        }
        ends.push((a, b));
        arcs.push(poly);
        lengths.push(length);
        sides.push((chain.left, chain.right));
    }

    // the region of the source is bounded by each arc twice: once shifted
    // back by its left lift (region on the left, traversed forwards) and once
    // by its right lift (traversed backwards)
    let x = field.source();
    let mut pieces: Vec<(f64, Dart)> = Vec::new();
    for (e, arc) in arcs.iter().enumerate() {
        let mid = arc[arc.len() / 2];
        let (left, right) = sides[e];
        for (lift, dart) in [(left, Dart::plus(e)), (right, Dart::minus(e))] {
            let p = sub(sub(mid, torus.lattice_vector(lift[0], lift[1])), x);
            pieces.push((p[1].atan2(p[0]), dart));
        }
    }
    pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
    let walk: Vec<Dart> = pieces.iter().map(|p| p.1).collect();

    let vertex_labels = (0..positions.len()).map(|v| format!("y{v}")).collect();
    let edge_labels = (0..ends.len()).map(|e| format!("c{e}")).collect();
    let graph = MultiGraph::new(positions.len(), ends)?
        .with_lengths(lengths.clone())?
        .with_labels(vertex_labels, edge_labels)?;
    let clns = scheme_from_walk(&graph, &walk)?;
    let epsilon = lengths.iter().cloned().fold(f64::INFINITY, f64::min) / 2.0;
    let probe = (8.0 * field.spacing()).min(epsilon);
    let mut confidence = arc_confidence(&graph, &arcs, probe, Some(field.resolution()));
    confidence.merged_junctions = members.iter().filter(|m| m.len() > 1).count();
    if confidence.merged_junctions > 0 {
        confidence.notes.push(format!(
            "{} vertices assembled from grid junctions closer than {MERGE_CELLS} cells",
            confidence.merged_junctions
        ));
    }
    Ok(CutLocusGraph {
        source: x,
        graph,
        positions,
        arcs,
        ridge_points,
        clns,
        epsilon,
        confidence,
        exact: false,
    })
}

fn torus_segment_distance(t: &FlatTorus, p: Point, a: Point, b: Point) -> f64 {
    let q = add(a, t.wrap(p, a));
    let mut best = f64::INFINITY;
    for i in -1..=1 {
        for j in -1..=1 {
            best = best.min(segment_distance(add(q, t.lattice_vector(i, j)), a, b));
        }
    }
    best
}

fn one_sided(t: &FlatTorus, from: &[Vec<Point>], to: &[Vec<Point>], spacing: f64) -> f64 {
    let segments: Vec<(Point, Point)> = to
        .iter()
        .flat_map(|poly| poly.windows(2).map(|w| (w[0], w[1])))
        .collect();
    let mut worst: f64 = 0.0;
    for poly in from {
        for w in poly.windows(2) {
            let steps = (norm(sub(w[1], w[0])) / spacing).ceil().max(1.0) as usize;
            for s in 0..=steps {
                let p = add(w[0], scale(sub(w[1], w[0]), s as f64 / steps as f64));
                let d = segments
                    .iter()
                    .map(|&(a, b)| torus_segment_distance(t, p, a, b))
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(d);
            }
        }
    }
    worst
}

/// Hausdorff distance on the torus between two sets of polylines, sampled
/// every `spacing`.
pub fn hausdorff_distance(t: &FlatTorus, a: &[Vec<Point>], b: &[Vec<Point>], spacing: f64) -> f64 {
    one_sided(t, a, b, spacing).max(one_sided(t, b, a, spacing))
}

use serde::Serialize;

use super::eikonal::{distance_field, FieldOptions};
use super::extract::{extract_cut_locus, CutLocusGraph};
use super::voronoi::{torus_voronoi_cutlocus, voronoi_cell};
use super::{add, norm, scale, segment_distance, sub, Bump, FlatTorus, Point, TorusError};
use crate::ribbon::{canonical_boundary_word, WordToken};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    pub resolution: usize,
    /// Use the distance field even on a flat torus.
    pub force_numeric: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            resolution: 256,
            force_numeric: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub parameter: f64,
    pub point: Point,
    pub method: Method,
    pub degree_profile: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub cycle_rank: usize,
    pub orientable: bool,
    /// Boundary word of the natural structure, up to relabelling.
    pub word: Vec<WordToken>,
    pub epsilon: f64,
    pub low_confidence: bool,
    /// Distance from the flat shortest segments to the bump support;
    /// negative once a segment enters the bump.
    pub clearance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Transition {
    /// First scanned point with the new profile.
    pub index: usize,
    pub parameter: f64,
    pub from: Vec<usize>,
    pub to: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub points: Vec<ScanPoint>,
    pub transitions: Vec<Transition>,
    pub profile_constant: bool,
    /// The natural structure (as a boundary word) never changes.
    pub clns_constant: bool,
    /// Every scanned cut locus is cubic.
    pub cubic: bool,
    pub notes: Vec<String>,
}

pub(crate) fn cut_locus_at(
    t: &FlatTorus,
    x: Point,
    opts: &ScanOptions,
) -> Result<CutLocusGraph, TorusError> {
    if t.is_flat() && !opts.force_numeric {
        torus_voronoi_cutlocus(&t.clone().without_bump(), x)
    } else {
        let field = distance_field(
            t,
            x,
            &FieldOptions {
                resolution: opts.resolution,
                ..FieldOptions::default()
            },
        )?;
        extract_cut_locus(&field)
    }
}

fn lerp(a: Point, b: Point, s: f64) -> Point {
    add(a, scale(sub(b, a), s))
}

/// Cut locus degree profile and natural structure at each point of a path,
/// with the points where the profile changes. Flat tori use the exact
/// Voronoi construction unless told otherwise.
pub fn stability_scan(
    t: &FlatTorus,
    path: &[Point],
    opts: &ScanOptions,
) -> Result<ScanReport, TorusError> {
    let first = *path.first().ok_or(TorusError::EmptyPath)?;
    let spread = path
        .iter()
        .map(|&p| t.flat_distance(first, p))
        .fold(0.0, f64::max);
    if spread > t.inradius() {
        return Err(TorusError::PathTooLong {
            spread,
            limit: t.inradius(),
        });
    }
    let method = if t.is_flat() && !opts.force_numeric {
        Method::Exact
    } else {
        Method::Numeric
    };
    let mut points = Vec::with_capacity(path.len());
    for (k, &x) in path.iter().enumerate() {
        let c = cut_locus_at(t, x, opts)?;
        points.push(ScanPoint {
            parameter: if path.len() > 1 {
                k as f64 / (path.len() - 1) as f64
            } else {
                0.0
            },
            point: x,
            method,
            degree_profile: c.degree_profile(),
            vertices: c.graph.vertex_count(),
            edges: c.graph.edge_count(),
            cycle_rank: c.cycle_rank(),
            orientable: c.clns.is_orientable(),
            word: canonical_boundary_word(&c.clns)?,
            epsilon: c.epsilon,
            low_confidence: c.confidence.low,
            clearance: segment_clearance(t, x),
        });
    }
    let transitions: Vec<Transition> = points
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].degree_profile != w[1].degree_profile)
        .map(|(k, w)| Transition {
            index: k + 1,
            parameter: w[1].parameter,
            from: w[0].degree_profile.clone(),
            to: w[1].degree_profile.clone(),
        })
        .collect();
    let profile_constant = transitions.is_empty();
    let clns_constant = profile_constant && points.windows(2).all(|w| w[0].word == w[1].word);
    let cubic = points
        .iter()
        .all(|p| p.degree_profile.iter().all(|&d| d == 3));
    let mut notes = Vec::new();
    if t.is_flat()
        && points
            .iter()
            .any(|p| p.degree_profile.iter().any(|&d| d > 3))
    {
        notes.push("flat metric is not generic: the cut locus keeps a vertex of degree above 3 at every base point".into());
    }
    if cubic && clns_constant {
        notes.push(
            "cut loci are cubic and their natural structure is locally constant along the path"
                .into(),
        );
    }
    if points.iter().any(|p| p.low_confidence) {
        notes.push("some degree profiles are low confidence; see the individual points".into());
    }
    Ok(ScanReport {
        points,
        transitions,
        profile_constant,
        clns_constant,
        cubic,
        notes,
    })
}

/// How close the flat shortest segments from `x` to the flat cut-locus
/// vertices come to the bump support. While this stays positive those
/// segments are still shortest in the bumped metric, so the flat vertices keep
/// their degree. `None` without a bump.
pub fn segment_clearance(t: &FlatTorus, x: Point) -> Option<f64> {
    let bump: &Bump = t.bump()?;
    let cell = voronoi_cell(t);
    let centre = add(x, t.wrap(bump.center, x));
    let mut best = f64::INFINITY;
    for &corner in &cell.corners {
        let r = norm(corner);
        for i in -1..=1 {
            for j in -1..=1 {
                let lift = t.lattice_vector(i, j);
                if (norm(sub(corner, lift)) - r).abs() > 1e-9 * r {
                    continue;
                }
                let (a, b) = (add(x, lift), add(x, corner));
                for bi in -2..=2 {
                    for bj in -2..=2 {
                        best = best.min(segment_distance(
                            add(centre, t.lattice_vector(bi, bj)),
                            a,
                            b,
                        ));
                    }
                }
            }
        }
    }
    Some(best - bump.radius)
}

/// Parameter `s ∈ [0, 1]` on the segment from `a` to `b` at which a flat
/// shortest segment first touches the bump support, if the clearance changes
/// sign along the path.
pub fn tangency_parameter(t: &FlatTorus, a: Point, b: Point) -> Option<f64> {
    let g = |s: f64| segment_clearance(t, lerp(a, b, s));
    let (g0, g1) = (g(0.0)?, g(1.0)?);
    if (g0 > 0.0) == (g1 > 0.0) {
        return None;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..80 {
        let mid = (lo + hi) / 2.0;
        if (g(mid)? > 0.0) == (g0 > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocateOptions {
    pub resolution: usize,
    /// Bracket width to reach, as a fraction of the path length.
    pub tolerance: f64,
    pub force_numeric: bool,
}

impl Default for LocateOptions {
    fn default() -> Self {
        LocateOptions {
            resolution: 256,
            tolerance: 1e-3,
            force_numeric: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionLocation {
    pub start: Point,
    pub end: Point,
    pub path_length: f64,
    /// Last parameter seen with the starting profile.
    pub lower: f64,
    /// First parameter seen with a different profile.
    pub upper: f64,
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub evaluations: usize,
    /// Where a flat shortest segment becomes tangent to the bump.
    pub tangency: Option<f64>,
}

/// Bisection on the straight path from `a` to `b` against the change of
/// degree profile, until the bracket is narrower than the tolerance.
pub fn locate_transition(
    t: &FlatTorus,
    a: Point,
    b: Point,
    opts: &LocateOptions,
) -> Result<TransitionLocation, TorusError> {
    let path_length = norm(sub(b, a));
    if path_length > t.inradius() {
        return Err(TorusError::PathTooLong {
            spread: path_length,
            limit: t.inradius(),
        });
    }
    let scan = ScanOptions {
        resolution: opts.resolution,
        force_numeric: opts.force_numeric,
    };
    let profile = |s: f64| cut_locus_at(t, lerp(a, b, s), &scan).map(|c| c.degree_profile());
    let from = profile(0.0)?;
    let mut to = profile(1.0)?;
    let mut evaluations = 2;
    if from == to {
        return Err(TorusError::NoTransition { profile: from });
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > opts.tolerance {
        let mid = (lo + hi) / 2.0;
        let p = profile(mid)?;
        evaluations += 1;
        if p == from {
            lo = mid;
        } else {
            hi = mid;
            to = p;
        }
    }
    Ok(TransitionLocation {
        start: a,
        end: b,
        path_length,
        lower: lo,
        upper: hi,
        from,
        to,
        evaluations,
        tangency: tangency_parameter(t, a, b),
    })
}

/// A unit square torus with a bump tangent to one of the four segments from
/// the origin to the cut-locus vertex, and a short horizontal path through
/// the origin moving that segment into the bump.
#[derive(Clone, Debug, PartialEq)]
pub struct BumpDemo {
    pub torus: FlatTorus,
    pub start: Point,
    pub end: Point,
}

pub const BUMP_DEMO_RADIUS: f64 = 0.15;
pub const BUMP_DEMO_HEIGHT: f64 = 1.0;

pub fn bump_demo() -> BumpDemo {
    let r = BUMP_DEMO_RADIUS;
    let s = r / 2f64.sqrt();
    // the segment from the lift (1, 0) to the vertex (½, ½) has its midpoint
    // at (¾, ¼); the bump sits on its far side from the origin
    let bump = Bump {
        center: [0.75 + s, 0.25 + s],
        radius: r,
        height: BUMP_DEMO_HEIGHT,
    };
    BumpDemo {
        torus: FlatTorus::square(1.0)
            .and_then(|t| t.with_bump(bump))
            .expect("bump fits in the unit cell"),
        start: [-0.1, 0.0],
        end: [0.15, 0.0],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_square_scan_is_constant_and_not_generic() {
        let t = FlatTorus::square(1.0).unwrap();
        let path: Vec<Point> = (0..10)
            .map(|k| [0.02 * k as f64, 0.01 * k as f64])
            .collect();
        let r = stability_scan(&t, &path, &ScanOptions::default()).unwrap();
        assert!(r.profile_constant && r.clns_constant && !r.cubic);
        assert!(r
            .points
            .iter()
            .all(|p| p.degree_profile == vec![4] && p.cycle_rank == 2));
        assert!(r.notes[0].contains("not generic"));
    }

    #[test]
    fn hexagonal_scan_is_cubic_and_locally_constant() {
        let t = FlatTorus::hexagonal(1.0).unwrap();
        let path: Vec<Point> = (0..50)
            .map(|k| [0.004 * k as f64, -0.002 * k as f64])
            .collect();
        let r = stability_scan(&t, &path, &ScanOptions::default()).unwrap();
        assert!(r.cubic && r.clns_constant && r.transitions.is_empty());
    }

    #[test]
    fn bump_demo_geometry() {
        let ex = bump_demo();
        let c = segment_clearance(&ex.torus, [0.0, 0.0]).unwrap();
        assert!(c.abs() < 1e-12, "{c}");
        assert!(segment_clearance(&ex.torus, ex.start).unwrap() > 0.0);
        assert!(segment_clearance(&ex.torus, ex.end).unwrap() < 0.0);
        let s = tangency_parameter(&ex.torus, ex.start, ex.end).unwrap();
        assert!((s - 0.4).abs() < 1e-12);
        assert!(segment_clearance(&FlatTorus::square(1.0).unwrap(), [0.0, 0.0]).is_none());
    }

    #[test]
    fn refusals() {
        let t = FlatTorus::square(1.0).unwrap();
        assert_eq!(
            stability_scan(&t, &[], &ScanOptions::default()).unwrap_err(),
            TorusError::EmptyPath
        );
        assert!(matches!(
            stability_scan(&t, &[[0.0, 0.0], [0.45, 0.45]], &ScanOptions::default()),
            Err(TorusError::PathTooLong { .. })
        ));
        assert_eq!(
            locate_transition(&t, [0.0, 0.0], [0.1, 0.0], &LocateOptions::default()).unwrap_err(),
            TorusError::NoTransition { profile: vec![4] }
        );
    }
}

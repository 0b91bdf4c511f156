use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::isometry::{from_origin, hyperbolic_distance, to_origin, Isometry};
use super::{polygon_parameters, Geometry, GeometryError, PolygonParameters, RegularPolygon};
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};
use crate::ribbon::EmbeddingScheme;

/// The two sides carrying one edge and the motion gluing the first onto the
/// second.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SidePairing {
    pub edge: EdgeId,
    pub source: usize,
    pub target: usize,
    /// Both sides are read in the same direction along the boundary, so the
    /// gluing needs a reflection.
    pub same_direction: bool,
    pub isometry: Isometry,
}

/// Regular `2m`-gon with side `i` running from corner `i` to corner `i + 1`
/// counter-clockwise and carrying the `i`-th step of the boundary walk.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolygonRealization {
    pub geometry: Geometry,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub euler_characteristic: i64,
    pub corner_angle: f64,
    pub side_length: f64,
    pub circumradius: f64,
    pub apothem: f64,
    #[serde(serialize_with = "serialize_points")]
    pub vertex_coords: Vec<Complex64>,
    pub side_pairing: Vec<SidePairing>,
    pub corner_map: Vec<VertexId>,
    pub side_map: Vec<EdgeId>,
    pub side_darts: Vec<Dart>,
    pub vertex_labels: Vec<String>,
    pub edge_labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Realization {
    /// Sphere or projective plane; nothing to place.
    Base(PolygonParameters),
    Polygon(PolygonRealization),
}

fn serialize_points<S: serde::Serializer>(pts: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        seq.serialize_element(&[p.re, p.im])?;
    }
    seq.end()
}

impl PolygonRealization {
    pub fn sides(&self) -> usize {
        self.vertex_coords.len()
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    pub fn distance(&self, z: Complex64, w: Complex64) -> f64 {
        match self.geometry {
            Geometry::Hyperbolic => hyperbolic_distance(z, w),
            _ => (z - w).norm(),
        }
    }

    /// Point at fraction `t` of the arc length of side `i`.
    pub fn point_on_side(&self, i: usize, t: f64) -> Complex64 {
        let p = self.sides();
        let (a, b) = (self.vertex_coords[i], self.vertex_coords[(i + 1) % p]);
        match self.geometry {
            Geometry::Hyperbolic => {
                let w = to_origin(a, b);
                let len = 2.0 * w.norm().atanh();
                from_origin(a, w / w.norm() * (t * len / 2.0).tanh())
            }
            _ => a + (b - a) * t,
        }
    }

    /// Interior angle at corner `i`, measured after moving the corner to the
    /// origin so that both sides leave it along straight rays.
    pub fn measured_corner_angle(&self, i: usize) -> f64 {
        let p = self.sides();
        let z = self.vertex_coords[i];
        let (prev, next) = (
            self.vertex_coords[(i + p - 1) % p],
            self.vertex_coords[(i + 1) % p],
        );
        let (u, w) = match self.geometry {
            Geometry::Hyperbolic => (to_origin(z, prev), to_origin(z, next)),
            _ => (prev - z, next - z),
        };
        (u / w).arg().rem_euclid(2.0 * PI)
    }

    /// The pairing through which side `i` is glued, and whether `i` is its
    /// source.
    pub fn pairing_of_side(&self, i: usize) -> (&SidePairing, bool) {
        let pair = &self.side_pairing[self.side_map[i]];
        (pair, pair.source == i)
    }
}

/// Lays the boundary walk of `scheme` around a regular polygon and glues
/// the two sides of each edge.
///
/// Edge lengths, when present, must all be equal; the hyperbolic polygon
/// also forces their value, while flat polygons are scaled to it.
pub fn realize(g: &MultiGraph, scheme: &EmbeddingScheme) -> Result<Realization, GeometryError> {
    if scheme.graph().all_ends() != g.all_ends() {
        return Err(GeometryError::GraphMismatch);
    }
    if !g.is_cyclic() {
        return Err(GeometryError::NotCyclic);
    }
    let profile = g.degree_profile();
    let k = match (g.edge_count(), profile.constant_order) {
        (0, _) => 0,
        (_, Some(k)) => k,
        (_, None) => {
            return Err(GeometryError::NotConstantOrder {
                degrees: profile.degrees,
            })
        }
    };
    let walk: Vec<Dart> = scheme.boundary_walk()?.iter().map(|w| w.dart).collect();
    let params = polygon_parameters(g.edge_count(), k)?;
    let Some(mut poly) = params.polygon else {
        return Ok(Realization::Base(params));
    };
    if let Some(lengths) = g.lengths() {
        let min = lengths.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = lengths.iter().cloned().fold(0.0, f64::max);
        if max - min > 1e-12 * max {
            return Err(GeometryError::UnequalLengths { min, max });
        }
        match params.geometry {
            Geometry::Hyperbolic => {
                if (min - poly.side_length).abs() > 1e-9 * poly.side_length {
                    return Err(GeometryError::LengthMismatch {
                        given: min,
                        forced: poly.side_length,
                    });
                }
            }
            _ => poly = RegularPolygon::euclidean(poly.sides, min),
        }
    }

    let p = 2 * g.edge_count();
    let model_radius = match params.geometry {
        Geometry::Hyperbolic => (poly.circumradius / 2.0).tanh(),
        _ => poly.circumradius,
    };
    let theta = |i: usize| -PI / 2.0 - PI / p as f64 + 2.0 * PI * i as f64 / p as f64;
    let coords: Vec<Complex64> = (0..p)
        .map(|i| Complex64::from_polar(model_radius, theta(i)))
        .collect();

    let mirror = |j: usize| match params.geometry {
        Geometry::Hyperbolic => Isometry::hyperbolic_reflection(coords[j], coords[(j + 1) % p]),
        _ => Isometry::euclidean_reflection(coords[j], coords[(j + 1) % p]),
    };
    let mut sides_of = vec![Vec::new(); g.edge_count()];
    for (i, d) in walk.iter().enumerate() {
        sides_of[d.edge()].push(i);
    }
    let side_pairing = sides_of
        .iter()
        .enumerate()
        .map(|(e, s)| {
            let (i, j) = (s[0], s[1]);
            let same = walk[i] == walk[j];
            let inner = if same {
                // corner i ↦ corner j, then fold across side j
                Isometry::rotation(2.0 * PI * (j - i) as f64 / p as f64)
            } else {
                // corner i ↦ corner j+1: mirror in the bisecting diameter
                Isometry::reflection_through_origin((theta(i) + theta(j + 1)) / 2.0)
            };
            SidePairing {
                edge: e,
                source: i,
                target: j,
                same_direction: same,
                isometry: mirror(j).compose(&inner),
            }
        })
        .collect();

    Ok(Realization::Polygon(PolygonRealization {
        geometry: params.geometry,
        m: params.m,
        k,
        n: params.n,
        euler_characteristic: params.euler_characteristic,
        corner_angle: poly.corner_angle,
        side_length: poly.side_length,
        circumradius: poly.circumradius,
        apothem: poly.apothem,
        vertex_coords: coords,
        side_pairing,
        corner_map: walk.iter().map(|&d| g.dart_vertex(d)).collect(),
        side_map: walk.iter().map(|d| d.edge()).collect(),
        side_darts: walk,
        vertex_labels: g.vertex_labels().to_vec(),
        edge_labels: g.edge_labels().to_vec(),
    }))
}

//! Cut loci of points on flat tori, with and without a smooth bump in the
//! metric.
//!
//! Flat tori are handled exactly: the cut locus of a point is the boundary of
//! the Voronoi cell of the lattice, glued along the translations. A bump turns
//! on the numeric path: a first-arrival distance field on a periodic grid,
//! from which the cut locus is read off as the set where shortest segments in
//! different homotopy classes meet.

mod eikonal;
mod extract;
mod scan;
mod svg;
mod voronoi;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multigraph::GraphError;
use crate::ribbon::SchemeError;

pub use eikonal::{
    bump_distance_field, distance_field, read_field_dump, DistanceField, FieldOptions,
};
pub use extract::{extract_cut_locus, hausdorff_distance, Confidence, CutLocusGraph};
pub use scan::{
    bump_demo, locate_transition, segment_clearance, stability_scan, tangency_parameter, BumpDemo,
    LocateOptions, Method, ScanOptions, ScanPoint, ScanReport, Transition, TransitionLocation,
};
pub use svg::cut_locus_svg;
pub use voronoi::{torus_voronoi_cutlocus, voronoi_cell, VoronoiCell};

pub type Point = [f64; 2];

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TorusError {
    #[error("lattice basis vectors are linearly dependent")]
    DegenerateBasis,
    #[error("invalid bump: {0}")]
    InvalidBump(String),
    #[error("bump radius {radius} does not fit inside one Voronoi cell (inradius {limit})")]
    BumpTooLarge { radius: f64, limit: f64 },
    #[error("the exact Voronoi path needs a flat torus; use the numeric distance field for bump metrics")]
    BumpPresent,
    #[error("resolution {got} is below the minimum of {min}")]
    ResolutionTooLow { got: usize, min: usize },
    #[error(
        "fast sweeping did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NotConverged { iterations: usize, residual: f64 },
    #[error("a ridge of the distance field closes up without meeting a junction")]
    RidgeWithoutJunction,
    #[error("the path is empty")]
    EmptyPath,
    #[error("path leaves the fundamental domain around its first point (spread {spread}, limit {limit})")]
    PathTooLong { spread: f64, limit: f64 },
    #[error("both ends of the path have degree profile {profile:?}")]
    NoTransition { profile: Vec<usize> },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Radial bump `φ(r) = h·exp(1 − 1/(1 − (r/R)²))` for `r < R`, zero outside.
/// The metric is `e^{2φ}` times the flat one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: Point,
    pub radius: f64,
    pub height: f64,
}

impl Bump {
    pub fn profile(&self, r: f64) -> f64 {
        let rho = r / self.radius;
        if rho >= 1.0 {
            0.0
        } else {
            self.height * (1.0 - 1.0 / (1.0 - rho * rho)).exp()
        }
    }
}

/// `R² / Λ` for a lattice `Λ`, optionally with a bump.
///
/// The basis is stored Lagrange–Gauss reduced and positively oriented, so the
/// eight neighbours `±b₁, ±b₂, ±b₁ ± b₂` contain every Voronoi-relevant
/// vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatTorus {
    basis: [Point; 2],
    bump: Option<Bump>,
}

pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(crate) fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

pub(crate) fn scale(a: Point, s: f64) -> Point {
    [a[0] * s, a[1] * s]
}

pub(crate) fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

/// Distance from `p` to the segment `[a, b]`.
pub(crate) fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0)
    };
    norm(sub(p, add(a, scale(ab, t))))
}

fn reduce_basis(mut b1: Point, mut b2: Point) -> [Point; 2] {
    if dot(b1, b1) > dot(b2, b2) {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let mu = (dot(b1, b2) / dot(b1, b1)).round();
        b2 = sub(b2, scale(b1, mu));
        if dot(b2, b2) < dot(b1, b1) {
            std::mem::swap(&mut b1, &mut b2);
        } else {
            break;
        }
    }
    if cross(b1, b2) < 0.0 {
        b2 = scale(b2, -1.0);
    }
    [b1, b2]
}

impl FlatTorus {
    pub fn new(b1: Point, b2: Point) -> Result<Self, TorusError> {
        let finite = b1.iter().chain(&b2).all(|c| c.is_finite());
        let area = cross(b1, b2).abs();
        if !finite || area <= 1e-12 * dot(b1, b1).max(dot(b2, b2)) {
            return Err(TorusError::DegenerateBasis);
        }
        Ok(FlatTorus {
            basis: reduce_basis(b1, b2),
            bump: None,
        })
    }

    pub fn square(side: f64) -> Result<Self, TorusError> {
        Self::new([side, 0.0], [0.0, side])
    }

    pub fn rectangular(a: f64, b: f64) -> Result<Self, TorusError> {
        Self::new([a, 0.0], [0.0, b])
    }

    /// Lattice generated by two unit-free vectors of length `side` at 60°.
    pub fn hexagonal(side: f64) -> Result<Self, TorusError> {
        Self::new([side, 0.0], [side / 2.0, side * 3f64.sqrt() / 2.0])
    }

    /// Adds a bump; its support must fit inside one Voronoi cell.
    pub fn with_bump(mut self, bump: Bump) -> Result<Self, TorusError> {
        if !(bump.radius > 0.0 && bump.radius.is_finite()) {
            return Err(TorusError::InvalidBump(format!(
                "radius {} must be positive",
                bump.radius
            )));
        }
        if !(bump.height.is_finite() && bump.center.iter().all(|c| c.is_finite())) {
            return Err(TorusError::InvalidBump(
                "height and centre must be finite".into(),
            ));
        }
        let limit = self.inradius();
        if bump.radius >= limit {
            return Err(TorusError::BumpTooLarge {
                radius: bump.radius,
                limit,
            });
        }
        self.bump = Some(bump);
        Ok(self)
    }

    pub fn without_bump(mut self) -> Self {
        self.bump = None;
        self
    }

    pub fn basis(&self) -> [Point; 2] {
        self.basis
    }

    pub fn bump(&self) -> Option<&Bump> {
        self.bump.as_ref()
    }

    pub fn is_flat(&self) -> bool {
        self.bump.is_none_or(|b| b.height == 0.0)
    }

    pub fn area(&self) -> f64 {
        cross(self.basis[0], self.basis[1])
    }

    /// Length of the shortest non-zero lattice vector.
    pub fn systole(&self) -> f64 {
        norm(self.basis[0])
    }

    /// Radius of the largest disk inside a Voronoi cell.
    pub fn inradius(&self) -> f64 {
        self.systole() / 2.0
    }

    pub fn lattice_vector(&self, i: i64, j: i64) -> Point {
        add(
            scale(self.basis[0], i as f64),
            scale(self.basis[1], j as f64),
        )
    }

    /// Coordinates of `p` in the lattice basis.
    pub fn to_lattice(&self, p: Point) -> [f64; 2] {
        let [b1, b2] = self.basis;
        let det = cross(b1, b2);
        [cross(p, b2) / det, cross(b1, p) / det]
    }

    pub fn from_lattice(&self, c: [f64; 2]) -> Point {
        add(scale(self.basis[0], c[0]), scale(self.basis[1], c[1]))
    }

    /// Representative of `p − origin` in the parallelogram centred at 0.
    pub fn wrap(&self, p: Point, origin: Point) -> Point {
        let c = self.to_lattice(sub(p, origin));
        self.from_lattice([c[0] - c[0].round(), c[1] - c[1].round()])
    }

    /// Flat distance between two points of the torus.
    pub fn flat_distance(&self, a: Point, b: Point) -> f64 {
        let d = self.wrap(b, a);
        let mut best = f64::INFINITY;
        for i in -1..=1 {
            for j in -1..=1 {
                best = best.min(norm(sub(d, self.lattice_vector(i, j))));
            }
        }
        best
    }

    /// The conformal exponent `φ` at `p`, summed over the bump's translates.
    pub fn conformal_exponent(&self, p: Point) -> f64 {
        match self.bump {
            None => 0.0,
            Some(b) if b.height == 0.0 => 0.0,
            Some(b) => {
                let d = self.wrap(p, b.center);
                let mut phi = 0.0;
                for i in -1..=1 {
                    for j in -1..=1 {
                        phi += b.profile(norm(sub(d, self.lattice_vector(i, j))));
                    }
                }
                phi
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_finds_short_vectors() {
        let t = FlatTorus::new([1.0, 0.0], [7.5, 3f64.sqrt() / 2.0]).unwrap();
        let [b1, b2] = t.basis();
        assert!((norm(b1) - 1.0).abs() < 1e-12);
        assert!((norm(b2) - 1.0).abs() < 1e-12);
        assert!(cross(b1, b2) > 0.0);
        assert!((t.area() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert_eq!(
            FlatTorus::new([1.0, 2.0], [2.0, 4.0]).unwrap_err(),
            TorusError::DegenerateBasis
        );
    }

    #[test]
    fn flat_distance_wraps() {
        let t = FlatTorus::square(1.0).unwrap();
        assert!((t.flat_distance([0.1, 0.1], [0.9, 0.9]) - 0.2 * 2f64.sqrt()).abs() < 1e-12);
        assert!((t.flat_distance([0.0, 0.0], [0.5, 0.5]) - 0.5f64.sqrt()).abs() < 1e-12);
        let h = FlatTorus::hexagonal(1.0).unwrap();
        assert!(
            (h.flat_distance([0.0, 0.0], [0.5, 0.5 / 3f64.sqrt()]) - 1.0 / 3f64.sqrt()).abs()
                < 1e-12
        );
    }

    #[test]
    fn bump_support_is_checked() {
        let t = FlatTorus::square(1.0).unwrap();
        let ok = Bump {
            center: [0.2, 0.3],
            radius: 0.2,
            height: 1.0,
        };
        let bt = t.clone().with_bump(ok).unwrap();
        assert!((bt.conformal_exponent([0.2, 0.3]) - 1.0).abs() < 1e-15);
        assert!((bt.conformal_exponent([1.2, -0.7]) - 1.0).abs() < 1e-12);
        assert_eq!(bt.conformal_exponent([0.7, 0.8]), 0.0);
        let big = Bump { radius: 0.5, ..ok };
        assert!(matches!(
            t.clone().with_bump(big),
            Err(TorusError::BumpTooLarge { .. })
        ));
        let bad = Bump { radius: -1.0, ..ok };
        assert!(matches!(t.with_bump(bad), Err(TorusError::InvalidBump(_))));
    }
}

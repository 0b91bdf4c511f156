//! Regular polygons of constant curvature whose side identifications realize
//! a one-face scheme on a cyclic graph of constant order.

mod isometry;
mod realize;
mod svg;
mod verify;

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::ribbon::SchemeError;

pub use isometry::Isometry;
pub use realize::{realize, PolygonRealization, Realization, SidePairing};
pub(crate) use svg::escape;
pub use svg::realization_svg;
pub use verify::{verify_realization, CheckResult, VerificationReport, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Sphere,
    ProjectivePlane,
    Euclidean,
    Hyperbolic,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("order {k} does not divide 2m = {}", 2 * m)]
    OrderDoesNotDivide { m: usize, k: usize },
    #[error("no cyclic graph has constant order {k} with {m} edges")]
    NoSuchGraph { m: usize, k: usize },
    #[error("graph is not its own cyclic part")]
    NotCyclic,
    #[error("graph is not of constant order (degrees {degrees:?})")]
    NotConstantOrder { degrees: Vec<usize> },
    #[error("scheme belongs to a different graph")]
    GraphMismatch,
    #[error("prescribed edge lengths differ ({min} to {max}); a regular polygon has equal sides")]
    UnequalLengths { min: f64, max: f64 },
    #[error("prescribed edge length {given} differs from the forced side length {forced}")]
    LengthMismatch { given: f64, forced: f64 },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// A regular polygon with `sides` sides and all interior angles equal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegularPolygon {
    pub sides: usize,
    pub corner_angle: f64,
    pub side_length: f64,
    pub circumradius: f64,
    pub apothem: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolygonParameters {
    pub geometry: Geometry,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    /// Of the glued closed surface.
    pub euler_characteristic: i64,
    /// `None` for the sphere and the projective plane.
    pub polygon: Option<RegularPolygon>,
}

impl RegularPolygon {
    /// Flat regular polygon with the given side.
    pub fn euclidean(sides: usize, side_length: f64) -> Self {
        let half = PI / sides as f64;
        RegularPolygon {
            sides,
            corner_angle: PI - 2.0 * half,
            side_length,
            circumradius: side_length / (2.0 * half.sin()),
            apothem: side_length / (2.0 * half.tan()),
        }
    }

    /// Hyperbolic regular polygon (curvature −1) with the given interior
    /// angle, from the right triangle formed by the centre, a side midpoint
    /// and a corner.
    pub fn hyperbolic(sides: usize, corner_angle: f64) -> Self {
        let a = PI / sides as f64;
        let b = corner_angle / 2.0;
        let cosh_r = 1.0 / (a.tan() * b.tan());
        let cosh_apothem = b.cos() / a.sin();
        let cosh_half_side = a.cos() / b.sin();
        RegularPolygon {
            sides,
            corner_angle,
            side_length: 2.0 * cosh_half_side.acosh(),
            circumradius: cosh_r.acosh(),
            apothem: cosh_apothem.acosh(),
        }
    }
}

/// Chooses the model for a cyclic graph with `m` edges, all vertices of
/// degree `k` (`k = 0` for the point). The glued surface has
/// `χ = n − m + 1` with `n = 2m/k`: positive only for the point and the
/// cycle, zero for the square and the hexagon, negative otherwise.
pub fn polygon_parameters(m: usize, k: usize) -> Result<PolygonParameters, GeometryError> {
    if m == 0 {
        return if k == 0 {
            Ok(PolygonParameters {
                geometry: Geometry::Sphere,
                m,
                k,
                n: 1,
                euler_characteristic: 2,
                polygon: None,
            })
        } else {
            Err(GeometryError::NoSuchGraph { m, k })
        };
    }
    if k == 0 || k == 1 {
        return Err(GeometryError::NoSuchGraph { m, k });
    }
    if !(2 * m).is_multiple_of(k) {
        return Err(GeometryError::OrderDoesNotDivide { m, k });
    }
    let n = 2 * m / k;
    let chi = n as i64 - m as i64 + 1;
    let sides = 2 * m;
    let (geometry, polygon) = if k == 2 {
        (Geometry::ProjectivePlane, None)
    } else if chi == 0 {
        (
            Geometry::Euclidean,
            Some(RegularPolygon::euclidean(sides, 1.0)),
        )
    } else {
        debug_assert!(chi < 0);
        (
            Geometry::Hyperbolic,
            Some(RegularPolygon::hyperbolic(sides, 2.0 * PI / k as f64)),
        )
    };
    Ok(PolygonParameters {
        geometry,
        m,
        k,
        n,
        euler_characteristic: chi,
        polygon,
    })
}

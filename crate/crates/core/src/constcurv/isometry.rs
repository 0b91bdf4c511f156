use num_complex::Complex64;
use serde::Serialize;

/// `z ↦ (a w + b) / (c w + d)` with `w = z̄` when `conjugate` is set. Covers
/// Euclidean motions (`c = 0`) and isometries of the Poincaré disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Isometry {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub conjugate: bool,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
            conjugate: false,
        }
    }

    pub fn rotation(angle: f64) -> Self {
        Isometry {
            a: Complex64::from_polar(1.0, angle),
            ..Self::identity()
        }
    }

    /// Reflection in the line through the origin at angle `psi`.
    pub fn reflection_through_origin(psi: f64) -> Self {
        Isometry {
            a: Complex64::from_polar(1.0, 2.0 * psi),
            conjugate: true,
            ..Self::identity()
        }
    }

    /// Euclidean reflection in the line through `p` and `q`.
    pub fn euclidean_reflection(p: Complex64, q: Complex64) -> Self {
        let u = (q - p) / (q - p).norm();
        let rot = u * u;
        Isometry {
            a: rot,
            b: p - rot * p.conj(),
            c: ZERO,
            d: ONE,
            conjugate: true,
        }
    }

    /// Reflection of the Poincaré disk in the geodesic through `p` and `q`:
    /// inversion in the circle orthogonal to the unit circle through both
    /// points, or a diameter reflection when they are collinear with 0.
    pub fn hyperbolic_reflection(p: Complex64, q: Complex64) -> Self {
        // centre x solves 2 Re(p x̄) = |p|² + 1 and the same for q
        let det = 2.0 * (p.re * q.im - p.im * q.re);
        let scale = p.norm().max(q.norm()).max(1e-300);
        if det.abs() < 1e-14 * scale {
            let dir = if p.norm() > q.norm() { p } else { q };
            return Self::reflection_through_origin(dir.arg());
        }
        let (rp, rq) = (p.norm_sqr() + 1.0, q.norm_sqr() + 1.0);
        let cx = (rp * q.im - rq * p.im) / det;
        let cy = (p.re * rq - q.re * rp) / det;
        let centre = Complex64::new(cx, cy);
        Isometry {
            a: centre,
            b: -ONE,
            c: ONE,
            d: -centre.conj(),
            conjugate: true,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = if self.conjugate { z.conj() } else { z };
        (self.a * w + self.b) / (self.c * w + self.d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let o = if self.conjugate {
            other.conj_coefficients()
        } else {
            *other
        };
        Isometry {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
            conjugate: self.conjugate ^ other.conjugate,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let inv = Isometry {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
            conjugate: self.conjugate,
        };
        if self.conjugate {
            inv.conj_coefficients()
        } else {
            inv
        }
    }

    pub fn preserves_orientation(&self) -> bool {
        !self.conjugate
    }

    fn conj_coefficients(&self) -> Isometry {
        Isometry {
            a: self.a.conj(),
            b: self.b.conj(),
            c: self.c.conj(),
            d: self.d.conj(),
            conjugate: self.conjugate,
        }
    }
}

pub(crate) fn hyperbolic_distance(z: Complex64, w: Complex64) -> f64 {
    2.0 * ((z - w).norm() / (ONE - z.conj() * w).norm()).atanh()
}

/// Disk isometry taking `z0` to the origin.
pub(crate) fn to_origin(z0: Complex64, u: Complex64) -> Complex64 {
    (u - z0) / (ONE - z0.conj() * u)
}

pub(crate) fn from_origin(z0: Complex64, u: Complex64) -> Complex64 {
    (u + z0) / (ONE + z0.conj() * u)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn reflections_fix_their_mirror() {
        let p = Complex64::new(0.3, 0.1);
        let q = Complex64::new(-0.2, 0.5);
        let r = Isometry::hyperbolic_reflection(p, q);
        assert!(close(r.apply(p), p));
        assert!(close(r.apply(q), q));
        let z = Complex64::new(0.1, -0.4);
        assert!(close(r.apply(r.apply(z)), z));
        assert!((hyperbolic_distance(r.apply(z), p) - hyperbolic_distance(z, p)).abs() < 1e-12);
        let e = Isometry::euclidean_reflection(p, q);
        assert!(close(e.apply(p), p) && close(e.apply(q), q));
        assert!(close(e.apply(e.apply(z)), z));
    }

    #[test]
    fn collinear_points_give_a_diameter() {
        let p = Complex64::new(0.2, 0.2);
        let r = Isometry::hyperbolic_reflection(p, 2.0 * p);
        assert!(close(r.apply(p), p));
        assert!(close(
            r.apply(Complex64::new(0.0, 0.3)),
            Complex64::new(0.3, 0.0)
        ));
    }

    #[test]
    fn composition_and_inverse() {
        let f = Isometry::hyperbolic_reflection(Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5));
        let g = Isometry::rotation(PI / 5.0);
        let h = Isometry::reflection_through_origin(0.3);
        let z = Complex64::new(0.2, 0.1);
        let fg = f.compose(&g).compose(&h);
        assert!(close(fg.apply(z), f.apply(g.apply(h.apply(z)))));
        assert!(close(fg.inverse().apply(fg.apply(z)), z));
        assert!(close(f.inverse().apply(f.apply(z)), z));
        assert!(fg.preserves_orientation());
        assert!(!f.compose(&g).preserves_orientation());
    }

    #[test]
    fn transport_round_trip() {
        let z0 = Complex64::new(0.4, -0.3);
        let u = Complex64::new(-0.1, 0.6);
        assert!(close(from_origin(z0, to_origin(z0, u)), u));
        assert!(close(to_origin(z0, z0), ZERO));
        assert!(
            (hyperbolic_distance(z0, u) - hyperbolic_distance(ZERO, to_origin(z0, u))).abs()
                < 1e-12
        );
    }
}

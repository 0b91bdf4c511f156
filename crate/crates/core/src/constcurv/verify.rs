use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::realize::PolygonRealization;
use super::Geometry;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// Point and length tolerance; `None` picks 1e-9 for flat polygons and
    /// 1e-7 for hyperbolic ones.
    pub tolerance: Option<f64>,
    /// Tolerance on angle sums and area.
    pub angle_tolerance: f64,
    /// Relative tolerance on the right-triangle identity.
    pub identity_tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 1000,
            seed: 0,
            tolerance: None,
            angle_tolerance: 1e-9,
            identity_tolerance: 1e-12,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub offending: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub geometry: Geometry,
    /// Measured angle sum of each corner class, keyed by graph vertex.
    pub corner_class_sums: Vec<(String, f64)>,
    /// `(2m − 2)π − Σ angles`: the hyperbolic area, zero when flat.
    pub angle_defect: f64,
    pub expected_defect: f64,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Check {
    name: &'static str,
    tolerance: f64,
    max_error: f64,
    offending: Vec<String>,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check {
            name,
            tolerance,
            max_error: 0.0,
            offending: Vec::new(),
        }
    }

    fn record(&mut self, error: f64, what: impl FnOnce() -> String) {
        let error = if error.is_nan() { f64::INFINITY } else { error };
        self.max_error = self.max_error.max(error);
        if error > self.tolerance {
            self.offending.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.max_error = f64::INFINITY;
        self.offending.push(what);
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.offending.is_empty(),
            max_error: self.max_error,
            tolerance: self.tolerance,
            offending: self.offending,
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Checks that the glued polygon is a smooth constant-curvature surface on
/// which the centre sees every identified pair of boundary points at equal
/// distance. Failures are reported, never raised.
pub fn verify_realization(r: &PolygonRealization, opts: &VerifyOptions) -> VerificationReport {
    let p = r.sides();
    let tol = opts.tolerance.unwrap_or(match r.geometry {
        Geometry::Hyperbolic => 1e-7,
        _ => 1e-9,
    });
    let mut checks = Vec::new();

    // corner classes generated by the pairings
    let mut classes = Check::new("corner_classes", opts.angle_tolerance);
    let mut parent: Vec<usize> = (0..p).collect();
    for pair in &r.side_pairing {
        let (i, j) = (pair.source, pair.target);
        let glued = if pair.same_direction {
            [(i, j), ((i + 1) % p, (j + 1) % p)]
        } else {
            [(i, (j + 1) % p), ((i + 1) % p, j)]
        };
        for (a, b) in glued {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let angles: Vec<f64> = (0..p).map(|i| r.measured_corner_angle(i)).collect();
    let mut roots: Vec<usize> = (0..p).map(|i| find(&mut parent, i)).collect();
    let mut corner_class_sums = Vec::new();
    let mut class_of_vertex = vec![None; r.n];
    for i in 0..p {
        let root = roots[i];
        let v = r.corner_map[i];
        match class_of_vertex[v] {
            None => class_of_vertex[v] = Some(root),
            Some(c) if c != root => classes.fail(format!(
                "vertex {} spans two corner classes",
                r.vertex_labels[v]
            )),
            _ => {}
        }
    }
    for v in 0..r.n {
        let Some(root) = class_of_vertex[v] else {
            classes.fail(format!("vertex {} has no corner", r.vertex_labels[v]));
            continue;
        };
        let members: Vec<usize> = (0..p).filter(|&i| roots[i] == root).collect();
        if members.iter().any(|&i| r.corner_map[i] != v) {
            classes.fail(format!(
                "corner class of {} mixes vertices",
                r.vertex_labels[v]
            ));
        }
        if members.len() != r.k {
            classes.fail(format!(
                "vertex {} has {} corners, expected {}",
                r.vertex_labels[v],
                members.len(),
                r.k
            ));
        }
        let sum: f64 = members.iter().map(|&i| angles[i]).sum();
        classes.record((sum - 2.0 * PI).abs(), || {
            format!("angle sum at {} is {sum}", r.vertex_labels[v])
        });
        corner_class_sums.push((r.vertex_labels[v].clone(), sum));
    }
    roots.sort_unstable();
    roots.dedup();
    if roots.len() != r.n {
        classes.fail(format!(
            "{} corner classes for {} vertices",
            roots.len(),
            r.n
        ));
    }
    checks.push(classes.finish());

    // Gauss–Bonnet
    let mut area = Check::new("gauss_bonnet", opts.angle_tolerance);
    let angle_defect = (p as f64 - 2.0) * PI - angles.iter().sum::<f64>();
    let expected_defect = -2.0 * PI * r.euler_characteristic as f64;
    area.record((angle_defect - expected_defect).abs(), || {
        format!("angle defect {angle_defect} but −2πχ = {expected_defect}")
    });
    checks.push(area.finish());

    if r.geometry == Geometry::Hyperbolic {
        let mut ident = Check::new("right_triangle_identity", opts.identity_tolerance);
        let lhs = r.circumradius.cosh();
        let rhs = r.apothem.cosh() * (r.side_length / 2.0).cosh();
        ident.record(((lhs - rhs) / lhs).abs(), || {
            format!("cosh R = {lhs}, cosh a · cosh(s/2) = {rhs}")
        });
        checks.push(ident.finish());
    }

    // identified points are equidistant from the centre
    let mut equi = Check::new("equidistance", tol);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let centre = r.center();
    for _ in 0..opts.samples {
        let i = rng.gen_range(0..p);
        let t: f64 = rng.gen();
        let z = r.point_on_side(i, t);
        let (pair, is_source) = r.pairing_of_side(i);
        let (image, other) = if is_source {
            (pair.isometry.apply(z), pair.target)
        } else {
            (pair.isometry.inverse().apply(z), pair.source)
        };
        let expected = r.point_on_side(other, if pair.same_direction { t } else { 1.0 - t });
        let off = r.distance(image, expected);
        let gap = (r.distance(centre, z) - r.distance(centre, image)).abs();
        equi.record(off.max(gap), || {
            format!("side {i} at t = {t:.6}: image off by {off:.3e}, distance gap {gap:.3e}")
        });
    }
    checks.push(equi.finish());

    let mut lengths = Check::new("side_lengths", tol);
    for i in 0..p {
        let d = r.distance(r.vertex_coords[i], r.vertex_coords[(i + 1) % p]);
        lengths.record((d - r.side_length).abs(), || {
            format!("side {i} has length {d}")
        });
    }
    checks.push(lengths.finish());

    let mut ends = Check::new("pairing_endpoints", tol);
    for pair in &r.side_pairing {
        let (i, j) = (pair.source, pair.target);
        let (a, b) = (r.vertex_coords[i], r.vertex_coords[(i + 1) % p]);
        let (c, d) = (r.vertex_coords[j], r.vertex_coords[(j + 1) % p]);
        let (ea, eb) = if pair.same_direction { (c, d) } else { (d, c) };
        let err = (pair.isometry.apply(a) - ea)
            .norm()
            .max((pair.isometry.apply(b) - eb).norm());
        ends.record(err, || {
            format!(
                "pairing of edge {} misses by {err:.3e}",
                r.edge_labels[pair.edge]
            )
        });
    }
    checks.push(ends.finish());

    VerificationReport {
        passed: checks.iter().all(|c| c.passed),
        geometry: r.geometry,
        corner_class_sums,
        angle_defect,
        expected_defect,
        samples: opts.samples,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constcurv::{realize, Realization};
    use crate::construct::one_face_embedding;
    use crate::multigraph::{catalog, Dart};
    use crate::ribbon::scheme_from_walk;

    fn realized(g: &crate::MultiGraph) -> PolygonRealization {
        let s = one_face_embedding(g).unwrap();
        match realize(g, &s).unwrap() {
            Realization::Polygon(p) => p,
            Realization::Base(_) => unreachable!(),
        }
    }

    #[test]
    fn torus_square_passes() {
        let g = catalog::rose(2);
        let s = scheme_from_walk(&g, &[Dart(0), Dart(2), Dart(1), Dart(3)]).unwrap();
        let Realization::Polygon(r) = realize(&g, &s).unwrap() else {
            unreachable!()
        };
        let rep = verify_realization(&r, &VerifyOptions::default());
        assert!(rep.passed, "{rep:#?}");
        assert!(rep.angle_defect.abs() < 1e-12);
    }

    #[test]
    fn petersen_area_is_eight_pi() {
        let r = realized(&catalog::petersen());
        let rep = verify_realization(&r, &VerifyOptions::default());
        assert!(rep.passed, "{rep:#?}");
        assert!((rep.angle_defect - 8.0 * PI).abs() < 1e-9);
        assert_eq!(rep.corner_class_sums.len(), 10);
    }

    #[test]
    fn many_graphs_pass() {
        for g in [
            catalog::theta(3),
            catalog::complete(4),
            catalog::complete(5),
            catalog::complete_bipartite(3, 3),
            catalog::complete_multipartite(&[2, 2, 2]),
            catalog::rose(3),
            catalog::rose(4),
            catalog::prism(4),
        ] {
            let r = realized(&g);
            let rep = verify_realization(
                &r,
                &VerifyOptions {
                    samples: 200,
                    ..Default::default()
                },
            );
            assert!(rep.passed, "{:?}: {rep:#?}", g.all_ends());
        }
    }

    #[test]
    fn swapped_pairings_are_caught() {
        let mut r = realized(&catalog::petersen());
        let first = r.side_pairing[0].isometry;
        r.side_pairing[0].isometry = r.side_pairing[1].isometry;
        r.side_pairing[1].isometry = first;
        let rep = verify_realization(&r, &VerifyOptions::default());
        assert!(!rep.passed);
        let equi = rep.check("equidistance").unwrap();
        assert!(!equi.passed);
        assert!(!equi.offending.is_empty());
    }
}

use std::io::{self, Read, Write};

use super::{add, norm, scale, sub, FlatTorus, Point, TorusError};

pub const MIN_RESOLUTION: usize = 64;
const MAGIC: &[u8; 8] = b"CLFIELD\0";

/// Lattice offsets of the lifts of the source that can be nearest to a point
/// of the centred fundamental domain, in label order. Ties go to the lower
/// label.
pub(crate) const LIFTS: [[i64; 2]; 9] = [
    [0, 0],
    [1, 0],
    [0, 1],
    [-1, 0],
    [0, -1],
    [1, 1],
    [-1, 1],
    [-1, -1],
    [1, -1],
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldOptions {
    /// Samples per side of the fundamental domain.
    pub resolution: usize,
    pub max_iterations: usize,
    /// Sweeping stops once no value moves by more than this.
    pub tolerance: f64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions {
            resolution: 256,
            max_iterations: 200,
            tolerance: 1e-10,
        }
    }
}

/// First-arrival distance from `source`, sampled on the `N × N` grid
/// `source + ((i + ½)/N − ½)·b₁ + ((j + ½)/N − ½)·b₂` of the fundamental
/// domain centred at the source. Each sample also records which lift of the
/// source is nearest, as an index into the nine neighbouring translates.
#[derive(Clone, Debug)]
pub struct DistanceField {
    torus: FlatTorus,
    source: Point,
    resolution: usize,
    spacing: f64,
    values: Vec<f64>,
    labels: Vec<u8>,
    iterations: usize,
    residual: f64,
}

impl DistanceField {
    pub fn torus(&self) -> &FlatTorus {
        &self.torus
    }

    pub fn source(&self) -> Point {
        self.source
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Node spacing of the Cartesian grid the equation was solved on.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Row-major samples, row `j` along `b₂`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.resolution + i]
    }

    pub fn label(&self, i: usize, j: usize) -> usize {
        self.labels[j * self.resolution + i] as usize
    }

    /// Lattice offset of the lift nearest to sample `(i, j)`.
    pub fn lift(&self, i: usize, j: usize) -> [i64; 2] {
        LIFTS[self.label(i, j)]
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Fractional lattice coordinate of sample index `i` relative to the source.
    pub fn offset(&self, i: f64) -> f64 {
        (i + 0.5) / self.resolution as f64 - 0.5
    }

    /// Plane position of a (possibly fractional, possibly unwrapped) sample
    /// index.
    pub fn position(&self, i: f64, j: f64) -> Point {
        add(
            self.source,
            self.torus.from_lattice([self.offset(i), self.offset(j)]),
        )
    }

    /// Writes the magic `CLFIELD\0`, the row and column counts as
    /// little-endian `u64`, then the samples as little-endian `f64`.
    pub fn write_dump<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&(self.resolution as u64).to_le_bytes())?;
        w.write_all(&(self.resolution as u64).to_le_bytes())?;
        for v in &self.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }
}

/// Reads a dump written by [`DistanceField::write_dump`]: `(rows, cols, values)`.
pub fn read_field_dump<R: Read>(mut r: R) -> io::Result<(usize, usize, Vec<f64>)> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            "not a field dump",
        ));
    }
    let mut word = [0u8; 8];
    r.read_exact(&mut word)?;
    let rows = u64::from_le_bytes(word) as usize;
    r.read_exact(&mut word)?;
    let cols = u64::from_le_bytes(word) as usize;
    let count = rows
        .checked_mul(cols)
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidData, "dimensions overflow"))?;
    let mut values = Vec::with_capacity(count.min(1 << 24));
    for _ in 0..count {
        r.read_exact(&mut word)?;
        values.push(f64::from_le_bytes(word));
    }
    Ok((rows, cols, values))
}

/// A field at the given resolution with default sweeping controls.
pub fn bump_distance_field(
    t: &FlatTorus,
    x: Point,
    resolution: usize,
) -> Result<DistanceField, TorusError> {
    distance_field(
        t,
        x,
        &FieldOptions {
            resolution,
            ..FieldOptions::default()
        },
    )
}

struct Grid {
    nx: usize,
    ny: usize,
    cx: usize,
    cy: usize,
    h: f64,
}

impl Grid {
    fn interpolate(&self, u: &[f64], q: Point) -> f64 {
        let fx = q[0] / self.h + self.cx as f64;
        let fy = q[1] / self.h + self.cy as f64;
        let k = (fx.floor() as isize).clamp(0, self.nx as isize - 2) as usize;
        let l = (fy.floor() as isize).clamp(0, self.ny as isize - 2) as usize;
        let (tx, ty) = (fx - k as f64, fy - l as f64);
        let at = |k: usize, l: usize| u[l * self.nx + k];
        (1.0 - ty) * ((1.0 - tx) * at(k, l) + tx * at(k + 1, l))
            + ty * ((1.0 - tx) * at(k, l + 1) + tx * at(k + 1, l + 1))
    }
}

/// Solves `|∇u| = e^φ` on a Cartesian cover of the nine fundamental domains
/// around `x` by Godunov upwind fast sweeping, with `u` seeded exactly on a
/// small disk around the source, then samples the lifts.
pub fn distance_field(
    t: &FlatTorus,
    x: Point,
    opts: &FieldOptions,
) -> Result<DistanceField, TorusError> {
    let n = opts.resolution;
    if n < MIN_RESOLUTION {
        return Err(TorusError::ResolutionTooLow {
            got: n,
            min: MIN_RESOLUTION,
        });
    }
    let [b1, b2] = t.basis();
    let h = norm(b1).min(norm(b2)) / n as f64;
    let half_x = 1.5 * (b1[0].abs() + b2[0].abs());
    let half_y = 1.5 * (b1[1].abs() + b2[1].abs());
    let cx = (half_x / h).ceil() as usize + 2;
    let cy = (half_y / h).ceil() as usize + 2;
    let grid = Grid {
        nx: 2 * cx + 1,
        ny: 2 * cy + 1,
        cx,
        cy,
        h,
    };
    let (nx, ny) = (grid.nx, grid.ny);
    let node = |k: usize, l: usize| [(k as f64 - cx as f64) * h, (l as f64 - cy as f64) * h];

    let mut slowness = vec![1.0; nx * ny];
    if !t.is_flat() {
        for l in 0..ny {
            for k in 0..nx {
                slowness[l * nx + k] = t.conformal_exponent(add(x, node(k, l))).exp();
            }
        }
    }
    let f0 = t.conformal_exponent(x).exp();
    let seed_radius = 6.0 * h;
    let mut u = vec![f64::INFINITY; nx * ny];
    let mut fixed = vec![false; nx * ny];
    let reach = (seed_radius / h).ceil() as usize;
    for l in cy - reach..=cy + reach {
        for k in cx - reach..=cx + reach {
            let q = node(k, l);
            let r = norm(q);
            if r <= seed_radius {
                let idx = l * nx + k;
                u[idx] = r * (f0 + slowness[idx]) / 2.0;
                fixed[idx] = true;
            }
        }
    }

    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    while iterations < opts.max_iterations {
        iterations += 1;
        residual = 0.0;
        for (rev_x, rev_y) in [(false, false), (true, false), (true, true), (false, true)] {
            residual = residual.max(sweep(&mut u, &slowness, &fixed, nx, ny, h, rev_x, rev_y));
        }
        if residual <= opts.tolerance {
            break;
        }
    }
    if residual > opts.tolerance {
        return Err(TorusError::NotConverged {
            iterations,
            residual,
        });
    }

    let lifts: Vec<Point> = LIFTS.iter().map(|&[i, j]| t.lattice_vector(i, j)).collect();
    let mut values = vec![0.0; n * n];
    let mut labels = vec![0u8; n * n];
    for j in 0..n {
        let fj = (j as f64 + 0.5) / n as f64 - 0.5;
        for i in 0..n {
            let fi = (i as f64 + 0.5) / n as f64 - 0.5;
            let o = add(scale(b1, fi), scale(b2, fj));
            let mut best = f64::INFINITY;
            let mut label = 0u8;
            for (k, &lift) in lifts.iter().enumerate() {
                let d = grid.interpolate(&u, sub(o, lift));
                if d < best - 1e-9 {
                    best = d;
                    label = k as u8;
                } else if d < best {
                    best = d;
                }
            }
            values[j * n + i] = best;
            labels[j * n + i] = label;
        }
    }
    Ok(DistanceField {
        torus: t.clone(),
        source: x,
        resolution: n,
        spacing: h,
        values,
        labels,
        iterations,
        residual,
    })
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    u: &mut [f64],
    f: &[f64],
    fixed: &[bool],
    nx: usize,
    ny: usize,
    h: f64,
    rev_x: bool,
    rev_y: bool,
) -> f64 {
    let mut change: f64 = 0.0;
    for ll in 0..ny {
        let l = if rev_y { ny - 1 - ll } else { ll };
        for kk in 0..nx {
            let k = if rev_x { nx - 1 - kk } else { kk };
            let idx = l * nx + k;
            if fixed[idx] {
                continue;
            }
            let west = if k > 0 { u[idx - 1] } else { f64::INFINITY };
            let east = if k + 1 < nx {
                u[idx + 1]
            } else {
                f64::INFINITY
            };
            let south = if l > 0 { u[idx - nx] } else { f64::INFINITY };
            let north = if l + 1 < ny {
                u[idx + nx]
            } else {
                f64::INFINITY
            };
            let a = west.min(east);
            let b = south.min(north);
            if a == f64::INFINITY && b == f64::INFINITY {
                continue;
            }
            let fh = f[idx] * h;
            let candidate = if (a - b).abs() >= fh {
                a.min(b) + fh
            } else {
                (a + b + (2.0 * fh * fh - (a - b) * (a - b)).sqrt()) / 2.0
            };
            if candidate < u[idx] {
                let old = u[idx];
                u[idx] = candidate;
                if old.is_finite() {
                    change = change.max(old - candidate);
                } else {
                    change = f64::INFINITY;
                }
            }
        }
    }
    change
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_lab::Bump;

    fn square_with(bump: Bump) -> FlatTorus {
        FlatTorus::square(1.0).unwrap().with_bump(bump).unwrap()
    }

    #[test]
    fn zero_height_bump_is_flat_to_grid_accuracy() {
        let t = square_with(Bump {
            center: [0.3, 0.2],
            radius: 0.2,
            height: 0.0,
        });
        let x = [0.1, 0.05];
        let f = bump_distance_field(&t, x, 128).unwrap();
        let h = f.spacing();
        let mut worst: f64 = 0.0;
        for j in 0..128 {
            for i in 0..128 {
                let p = f.position(i as f64, j as f64);
                worst = worst.max((f.value(i, j) - t.flat_distance(x, p)).abs());
            }
        }
        assert!(worst < 2.0 * h, "worst error {worst} against h = {h}");
        assert!(f.value(63, 63).min(f.value(64, 64)) < h);
    }

    #[test]
    fn bump_lengthens_paths_through_it() {
        let bump = Bump {
            center: [0.3, 0.0],
            radius: 0.15,
            height: 0.2,
        };
        let t = square_with(bump);
        let flat = FlatTorus::square(1.0).unwrap();
        let x = [0.0, 0.0];
        let fb = bump_distance_field(&t, x, 128).unwrap();
        let ff = bump_distance_field(&flat, x, 128).unwrap();
        for (b, f) in fb.values().iter().zip(ff.values()) {
            assert!(b >= &(f - 1e-12));
        }
        // samples just below the ray through the bump centre, behind the centre
        let mut checked = 0;
        for i in 0..128 {
            let p = fb.position(i as f64, 63.0);
            if p[0] > 0.3 && p[0] < 0.45 {
                let exact = t.flat_distance(x, p);
                assert!(fb.value(i, 63) > exact + 2.0 * fb.spacing(), "sample {i}");
                checked += 1;
            }
        }
        assert!(checked > 5);
    }

    #[test]
    fn mirror_symmetric_configuration() {
        let t = square_with(Bump {
            center: [0.3, 0.0],
            radius: 0.15,
            height: 0.5,
        });
        let f = bump_distance_field(&t, [0.0, 0.0], 64).unwrap();
        let n = 64;
        for j in 0..n {
            for i in 0..n {
                assert!((f.value(i, j) - f.value(i, n - 1 - j)).abs() < 1e-8);
            }
        }
        assert!(f.iterations() > 1);
    }

    #[test]
    fn nearest_lift_labels_match_the_lattice() {
        let t = FlatTorus::hexagonal(1.0).unwrap();
        let x = [0.2, 0.1];
        let f = bump_distance_field(&t, x, 64).unwrap();
        let mut disagreements = 0;
        for j in 0..64 {
            for i in 0..64 {
                let o = t.from_lattice([f.offset(i as f64), f.offset(j as f64)]);
                let exact = LIFTS
                    .iter()
                    .map(|&[a, b]| norm(sub(o, t.lattice_vector(a, b))))
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap()
                    .0;
                if exact != f.label(i, j) {
                    disagreements += 1;
                }
            }
        }
        // only samples within a cell or so of a bisector can disagree
        assert!(disagreements < 64 * 3, "{disagreements}");
    }

    #[test]
    fn refusals_and_dump_round_trip() {
        let t = FlatTorus::square(1.0).unwrap();
        assert_eq!(
            bump_distance_field(&t, [0.0, 0.0], 32).unwrap_err(),
            TorusError::ResolutionTooLow { got: 32, min: 64 }
        );
        let short = FieldOptions {
            resolution: 64,
            max_iterations: 1,
            tolerance: 1e-10,
        };
        let bumped = t
            .clone()
            .with_bump(Bump {
                center: [0.3, 0.1],
                radius: 0.2,
                height: 1.0,
            })
            .unwrap();
        assert!(matches!(
            distance_field(&bumped, [0.0, 0.0], &short),
            Err(TorusError::NotConverged { iterations: 1, .. })
        ));
        let f = bump_distance_field(&t, [0.0, 0.0], 64).unwrap();
        let mut buf = Vec::new();
        f.write_dump(&mut buf).unwrap();
        assert_eq!(buf.len(), 24 + 8 * 64 * 64);
        let (rows, cols, values) = read_field_dump(&buf[..]).unwrap();
        assert_eq!((rows, cols), (64, 64));
        assert_eq!(values, f.values());
        assert!(read_field_dump(&b"CLFIELD"[..]).is_err());
    }
}

use std::fmt::Write;

use super::extract::CutLocusGraph;
use super::{add, norm, scale, sub, FlatTorus, Point};
use crate::constcurv::escape;

const SIZE: f64 = 640.0;

/// The fundamental domain centred at the source with the cut locus drawn on
/// it (arcs cut where they wrap), the bump support and the vertices with
/// their degrees.
pub fn cut_locus_svg(c: &CutLocusGraph, t: &FlatTorus) -> String {
    let x = c.source;
    let [b1, b2] = t.basis();
    let corners: Vec<Point> = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]
        .iter()
        .map(|&(u, v)| t.from_lattice([u, v]))
        .collect();
    let extent = corners
        .iter()
        .map(|p| p[0].abs().max(p[1].abs()))
        .fold(0.0, f64::max);
    let zoom = (SIZE / 2.0 - 30.0) / extent;
    let px = |p: Point| (SIZE / 2.0 + zoom * p[0], SIZE / 2.0 - zoom * p[1]);
    let jump = 0.25 * norm(b1).min(norm(b2));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let outline: Vec<String> = corners
        .iter()
        .map(|&p| {
            let (a, b) = px(p);
            format!("{a:.3},{b:.3}")
        })
        .collect();
    let _ = writeln!(
        s,
        r#"<polygon points="{}" fill="none" stroke="gray" stroke-width="1"/>"#,
        outline.join(" ")
    );
    if let Some(bump) = t.bump() {
        let (cx, cy) = px(t.wrap(bump.center, x));
        let _ = writeln!(
            s,
            r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="wheat" stroke="peru"/>"#,
            zoom * bump.radius
        );
    }
    for arc in &c.arcs {
        let mut runs: Vec<Vec<Point>> = vec![Vec::new()];
        let mut last: Option<Point> = None;
        let mut dense = vec![arc[0]];
        for w in arc.windows(2) {
            let steps = (norm(sub(w[1], w[0])) / (jump / 8.0)).ceil().max(1.0) as usize;
            dense.extend(
                (1..=steps).map(|k| add(w[0], scale(sub(w[1], w[0]), k as f64 / steps as f64))),
            );
        }
        for p in dense {
            let q = t.wrap(p, x);
            if let Some(l) = last {
                if norm(sub(q, l)) > jump {
                    runs.push(Vec::new());
                }
            }
            runs.last_mut().unwrap().push(q);
            last = Some(q);
        }
        for run in runs.iter().filter(|r| r.len() > 1) {
            let pts: Vec<String> = run
                .iter()
                .map(|&p| {
                    let (a, b) = px(p);
                    format!("{a:.3},{b:.3}")
                })
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="crimson" stroke-width="2" stroke-dasharray="6 3"/>"#,
                pts.join(" ")
            );
        }
    }
    let degrees = c.degrees();
    for (v, &p) in c.positions.iter().enumerate() {
        let (a, b) = px(t.wrap(p, x));
        let _ = writeln!(
            s,
            r#"<circle cx="{a:.3}" cy="{b:.3}" r="5" fill="crimson"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="black">{} ({})</text>"#,
            a + 7.0,
            b - 7.0,
            escape(c.graph.vertex_label(v)),
            degrees[v]
        );
    }
    let (a, b) = px([0.0, 0.0]);
    let _ = writeln!(s, r#"<circle cx="{a:.3}" cy="{b:.3}" r="4" fill="navy"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="navy">x</text>"#,
        a + 6.0,
        b + 14.0
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_lab::torus_voronoi_cutlocus;

    #[test]
    fn svg_is_deterministic() {
        let t = FlatTorus::hexagonal(1.0).unwrap();
        let c = torus_voronoi_cutlocus(&t, [0.1, 0.2]).unwrap();
        let a = cut_locus_svg(&c, &t);
        assert_eq!(a, cut_locus_svg(&c, &t));
        assert!(a.matches("<polyline").count() >= 3);
        assert!(a.contains("(3)"));
    }
}

use std::fmt::Write;

use super::realize::PolygonRealization;
use super::Geometry;

const SIZE: f64 = 640.0;

/// The polygon with paired sides in matching colours, a dot a quarter of the
/// way along each side to show its direction, and corner labels naming the
/// glued graph vertex. Output depends only on the realization.
pub fn realization_svg(r: &PolygonRealization) -> String {
    let half = SIZE / 2.0;
    let scale = match r.geometry {
        Geometry::Hyperbolic => half - 40.0,
        _ => (half - 60.0) / r.vertex_coords[0].norm(),
    };
    let px = |z: num_complex::Complex64| (half + scale * z.re, half - scale * z.im);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if r.geometry == Geometry::Hyperbolic {
        let _ = writeln!(
            s,
            r#"<circle cx="{half}" cy="{half}" r="{scale:.3}" fill="none" stroke="silver" stroke-dasharray="4 4"/>"#
        );
    }
    let p = r.sides();
    let m = r.side_pairing.len().max(1);
    for i in 0..p {
        let e = r.side_map[i];
        let colour = format!("hsl({:.1},70%,42%)", 360.0 * e as f64 / m as f64);
        let pts: Vec<String> = (0..=24)
            .map(|k| {
                let (x, y) = px(r.point_on_side(i, k as f64 / 24.0));
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="3"/>"#,
            pts.join(" ")
        );
        let (dx, dy) = px(r.point_on_side(i, 0.25));
        let _ = writeln!(
            s,
            r#"<circle cx="{dx:.3}" cy="{dy:.3}" r="4" fill="{colour}"/>"#
        );
        let mid = r.point_on_side(i, 0.5);
        let (lx, ly) = px(mid * 0.85);
        let _ = writeln!(
            s,
            r#"<text x="{lx:.3}" y="{ly:.3}" font-size="11" text-anchor="middle" fill="{colour}">{}</text>"#,
            escape(&r.edge_labels[e])
        );
    }
    for (i, &z) in r.vertex_coords.iter().enumerate() {
        let (x, y) = px(z * 1.08);
        let _ = writeln!(
            s,
            r#"<text x="{x:.3}" y="{y:.3}" font-size="12" text-anchor="middle" fill="black">{}</text>"#,
            escape(&r.vertex_labels[r.corner_map[i]])
        );
    }
    let _ = writeln!(s, r#"<circle cx="{half}" cy="{half}" r="3" fill="black"/>"#);
    s.push_str("</svg>\n");
    s
}

pub(crate) fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constcurv::{realize, Realization};
    use crate::construct::one_face_embedding;
    use crate::multigraph::catalog;

    #[test]
    fn svg_is_deterministic_and_complete() {
        let g = catalog::petersen();
        let s = one_face_embedding(&g).unwrap();
        let Realization::Polygon(r) = realize(&g, &s).unwrap() else {
            unreachable!()
        };
        let a = realization_svg(&r);
        assert_eq!(a, realization_svg(&r));
        assert_eq!(a.matches("<polyline").count(), 30);
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
    }
}

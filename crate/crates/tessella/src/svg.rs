//! Deterministic SVG rendering of disk layouts.
//!
//! One path per face; edges are drawn as circular arcs orthogonal to the unit
//! circle (geodesics of the disk model) unless they pass through the center,
//! where the geodesic degenerates to a chord. Identical input bytes in,
//! identical output bytes out: float formatting goes through Rust's shortest
//! round-trip `Display`.

use std::fmt::Write as _;

use crate::layout::DiskLayout;

/// Output options. The viewBox is `size x size`, the disk fills it.
#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub size: u32,
    pub stroke_width: f64,
    /// Draw geodesic arcs (true) or straight chords (false).
    pub geodesic: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            size: 1000,
            stroke_width: 1.5,
            geodesic: true,
        }
    }
}

/// Deterministic face colour from its size: a fixed golden-angle hue walk.
pub fn face_color(size: u32) -> String {
    let hue = (f64::from(size) * 137.50776405003785) % 360.0;
    format!("hsl({:.2},62%,71%)", hue)
}

fn to_px(z: [f64; 2], size: u32) -> (f64, f64) {
    let s = f64::from(size);
    (
        (z[0] + 1.0) * 0.5 * s,
        // SVG y grows downward
        (1.0 - (z[1] + 1.0) * 0.5) * s,
    )
}

/// Circle through two interior points orthogonal to the unit circle, if the
/// chord does not pass through the center: returns (center, radius).
fn orthocircle(p: [f64; 2], q: [f64; 2]) -> Option<([f64; 2], f64)> {
    // orthogonality to the unit circle means |c|^2 = r^2 + 1; solving
    // |p - c| = |q - c| = r gives the linear system 2 p·c = |p|^2 + 1, same
    // for q
    let (a1, b1, c1) = (2.0 * p[0], 2.0 * p[1], p[0] * p[0] + p[1] * p[1] + 1.0);
    let (a2, b2, c2) = (2.0 * q[0], 2.0 * q[1], q[0] * q[0] + q[1] * q[1] + 1.0);
    let det = a1 * b2 - a2 * b1;
    if det.abs() < 1e-9 {
        return None; // collinear with the center: geodesic is a diameter
    }
    let cx = (c1 * b2 - c2 * b1) / det;
    let cy = (a1 * c2 - a2 * c1) / det;
    let r = (cx * cx + cy * cy - 1.0).sqrt();
    Some(([cx, cy], r))
}

/// Renders the layout as standalone SVG text.
pub fn render_svg(layout: &DiskLayout, spec: &RenderSpec) -> String {
    let size = spec.size;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{size}" height="{size}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{size}" height="{size}" fill="white"/>"#
    );
    let half = f64::from(size) / 2.0;
    let _ = writeln!(
        out,
        r#"<circle cx="{half}" cy="{half}" r="{half}" fill="none" stroke="black" stroke-width="{w}"/>"#,
        w = spec.stroke_width
    );

    for (f, cycle) in &layout.faces {
        if cycle.iter().any(|v| !layout.points.contains_key(v)) {
            continue;
        }
        let pts: Vec<[f64; 2]> = cycle.iter().map(|v| layout.points[v]).collect();
        let mut d = String::new();
        let (x0, y0) = to_px(pts[0], size);
        let _ = write!(d, "M {x0} {y0}");
        for i in 0..pts.len() {
            let p = pts[i];
            let q = pts[(i + 1) % pts.len()];
            let (qx, qy) = to_px(q, size);
            match (spec.geodesic, orthocircle(p, q)) {
                (true, Some((_, r))) => {
                    let rp = r * half;
                    // faces are counterclockwise in disk coordinates; with the
                    // y-flip into SVG space the arc toward the circle runs
                    // clockwise, sweep flag 1 keeps the bulge outward
                    let sweep = if cross(p, q) >= 0.0 { 0 } else { 1 };
                    let _ = write!(d, " A {rp} {rp} 0 0 {sweep} {qx} {qy}");
                }
                _ => {
                    let _ = write!(d, " L {qx} {qy}");
                }
            }
        }
        let _ = write!(d, " Z");
        let color = face_color(face_size_of(layout, *f));
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="{color}" stroke="black" stroke-width="{w}"/>"#,
            w = spec.stroke_width
        );
    }
    out.push_str("</svg>\n");
    out
}

fn cross(p: [f64; 2], q: [f64; 2]) -> f64 {
    p[0] * q[1] - p[1] * q[0]
}

fn face_size_of(layout: &DiskLayout, f: crate::patch::Fid) -> u32 {
    layout
        .faces
        .iter()
        .find(|(g, _)| *g == f)
        .map(|(_, cycle)| cycle.len() as u32)
        .unwrap_or(3)
}

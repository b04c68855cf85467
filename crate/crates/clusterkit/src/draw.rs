//! SVG pictures of pipelines and broken-line trajectories.

use std::fmt::Write;

use clusterkit_core::geometry::{Pipeline, Triangulation};
use clusterkit_core::scattering::BrokenLine;
use num_traits::ToPrimitive;

const SIZE: f64 = 400.0;
const COLORS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn corner(k: usize, size: usize) -> (f64, f64) {
    let t = std::f64::consts::TAU * k as f64 / size as f64 - std::f64::consts::FRAC_PI_2;
    (SIZE / 2.0 + 0.42 * SIZE * t.cos(), SIZE / 2.0 + 0.42 * SIZE * t.sin())
}

fn lerp(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

/// Polygon with its labeled diagonals and one polyline per pipeline through
/// evenly spaced points on the diagonals it crosses.
pub fn pipelines_svg(t: &Triangulation, pipes: &[Pipeline]) -> String {
    let n = t.size();
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\">\n");
    let pts: Vec<String> = (0..n).map(|k| corner(k, n)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(s, "<polygon points=\"{}\" fill=\"none\" stroke=\"black\"/>", pts.join(" "));
    let mut uses = vec![0usize; t.labels().count() + 1];
    let mut total = vec![0usize; t.labels().count() + 1];
    for p in pipes {
        for &c in &p.crossed {
            total[c as usize] += 1;
        }
    }
    for l in t.labels() {
        let (a, b) = t.edge(l);
        let (pa, pb) = (corner(a, n), corner(b, n));
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"gray\"/>",
            pa.0, pa.1, pb.0, pb.1
        );
        let m = lerp(pa, pb, 0.5);
        let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{l}</text>", m.0, m.1);
    }
    for (k, p) in pipes.iter().enumerate() {
        let mut pts = vec![corner(p.ends.0, n)];
        for &c in &p.crossed {
            let (a, b) = t.edge(c);
            uses[c as usize] += 1;
            let f = uses[c as usize] as f64 / (total[c as usize] + 1) as f64;
            pts.push(lerp(corner(a, n), corner(b, n), f));
        }
        pts.push(corner(p.ends.1, n));
        let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>",
            path.join(" "),
            COLORS[k % COLORS.len()]
        );
    }
    for k in 0..n {
        let (x, y) = corner(k, n);
        let _ = writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\"/>");
    }
    s.push_str("</svg>\n");
    s
}

/// Projection of broken lines onto coordinates `i` and `j` (1-based): each
/// trajectory runs from its first bend point, or the endpoint for a straight
/// line, through the later bends to the endpoint, with an incoming ray
/// along `m_0`.
pub fn broken_lines_svg(lines: &[BrokenLine], i: usize, j: usize) -> String {
    let proj = |p: &[num_rational::BigRational]| (p[i - 1].to_f64().unwrap_or(0.0), p[j - 1].to_f64().unwrap_or(0.0));
    let mut tracks: Vec<Vec<(f64, f64)>> = Vec::new();
    for l in lines {
        let mut pts: Vec<(f64, f64)> = l.bends.iter().map(|b| proj(b)).collect();
        pts.push(proj(&l.endpoint));
        let m0 = &l.directions[0];
        let first = pts[0];
        let span = 1.0;
        pts.insert(0, (first.0 + span * m0[i - 1] as f64, first.1 + span * m0[j - 1] as f64));
        tracks.push(pts);
    }
    let all: Vec<(f64, f64)> = tracks.iter().flatten().copied().collect();
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in &all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let scale = (SIZE - 40.0) / (x1 - x0).max(y1 - y0).max(1e-9);
    let map = |(x, y): (f64, f64)| (20.0 + (x - x0) * scale, SIZE - 20.0 - (y - y0) * scale);
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\">\n");
    let (ox, oy) = map((0.0, 0.0));
    let _ = writeln!(s, "<line x1=\"0\" y1=\"{oy:.2}\" x2=\"{SIZE}\" y2=\"{oy:.2}\" stroke=\"lightgray\"/>");
    let _ = writeln!(s, "<line x1=\"{ox:.2}\" y1=\"0\" x2=\"{ox:.2}\" y2=\"{SIZE}\" stroke=\"lightgray\"/>");
    for (k, t) in tracks.iter().enumerate() {
        let pts: Vec<String> = t.iter().map(|&p| map(p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            pts.join(" "),
            COLORS[k % COLORS.len()]
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use clusterkit_core::geometry::{decompose, Triangulation};
    use clusterkit_core::quiver::a_n;
    use clusterkit_core::scattering::broken_lines;

    #[test]
    fn pipeline_picture_has_one_polyline_per_pipeline() {
        let q = a_n(3);
        let t = Triangulation::from_quiver(&q).unwrap();
        let d = decompose(&q, &[1, 2, 1]).unwrap();
        let svg = pipelines_svg(&t, &d.pipelines);
        assert_eq!(svg.matches("<polyline").count(), d.pipelines.len());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn broken_line_picture_is_deterministic() {
        let q = a_n(4);
        let path = q.linear_subquiver(&[1, 2, 3]).unwrap();
        let lines = broken_lines(&q, &path, false).unwrap();
        let svg = broken_lines_svg(&lines, 1, 2);
        assert_eq!(svg.matches("<polyline").count(), lines.len());
        assert_eq!(svg, broken_lines_svg(&lines, 1, 2));
    }
}

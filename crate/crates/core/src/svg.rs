//! SVG 1.1 figures. Styling is fixed so that output is byte-stable for a
//! given input.

use crate::art_gallery::GuardCertificate;
use crate::geometry::{Point, Polygon};
use crate::rect_partition::RectPartition;
use crate::strip::TriMesh;
use std::fmt::Write;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 16.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Maps model coordinates into a square canvas with y pointing up.
struct Frame {
    min: (f64, f64),
    scale: f64,
    height: f64,
    x_offset: f64,
}

impl Frame {
    fn fit(points: impl IntoIterator<Item = (f64, f64)>, x_offset: f64) -> Frame {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for (x, y) in points {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if !lo.0.is_finite() {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        Frame {
            min: lo,
            scale,
            height: (hi.1 - lo.1) * scale + 2.0 * MARGIN,
            x_offset,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            self.x_offset + MARGIN + (x - self.min.0) * self.scale,
            self.height - MARGIN - (y - self.min.1) * self.scale,
        )
    }

    fn path(&self, ring: &[(f64, f64)]) -> String {
        let mut d = String::new();
        for (i, &p) in ring.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{:.3},{:.3}", if i == 0 { "M" } else { " L" }, x, y);
        }
        d.push_str(" Z");
        d
    }
}

fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n{body}</svg>\n"
    )
}

fn f64s(ring: &[Point]) -> Vec<(f64, f64)> {
    ring.iter().map(Point::to_f64).collect()
}

fn polygon_body(frame: &Frame, poly: &Polygon) -> String {
    let d: String = poly.rings().map(|r| frame.path(&f64s(r)) + " ").collect();
    format!(
        "<path d=\"{}\" fill=\"#dde8f4\" fill-rule=\"evenodd\" stroke=\"#222\" stroke-width=\"1.5\"/>\n",
        d.trim_end()
    )
}

fn frame_for(poly: &Polygon) -> Frame {
    Frame::fit(poly.vertices().iter().map(Point::to_f64), 0.0)
}

/// Polygon, decomposition faces, and guards as filled dots.
pub fn gallery_svg(poly: &Polygon, cert: &GuardCertificate) -> String {
    let frame = frame_for(poly);
    let mut body = polygon_body(&frame, poly);
    for face in cert.decomposition.faces() {
        let ring: Vec<(f64, f64)> = face.iter().map(|&v| poly.vertex(v).to_f64()).collect();
        let _ = writeln!(
            body,
            "<path d=\"{}\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.75\"/>",
            frame.path(&ring)
        );
    }
    for &g in &cert.guards {
        let (x, y) = frame.map(poly.vertex(g).to_f64());
        let _ = writeln!(body, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"5\" fill=\"#d62728\"/>");
    }
    document(SIZE, frame.height, &body)
}

/// Rectangles outlined, diagonals of the disjoint set dashed.
pub fn rectangles_svg(poly: &Polygon, part: &RectPartition) -> String {
    let frame = frame_for(poly);
    let mut body = polygon_body(&frame, poly);
    for r in &part.rectangles {
        let (x0, y0) = (crate::rational::to_f64(&r.xmin), crate::rational::to_f64(&r.ymin));
        let (x1, y1) = (crate::rational::to_f64(&r.xmax), crate::rational::to_f64(&r.ymax));
        let ring = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
        let _ = writeln!(
            body,
            "<path d=\"{}\" fill=\"none\" stroke=\"#555\" stroke-width=\"1\"/>",
            frame.path(&ring)
        );
    }
    for d in &part.diagonals {
        let (a, b) = (frame.map(d.segment.a.to_f64()), frame.map(d.segment.b.to_f64()));
        let _ = writeln!(
            body,
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>",
            a.0, a.1, b.0, b.1
        );
    }
    document(SIZE, frame.height, &body)
}

/// Points as dots, cluster members in color, the diameter pair joined.
pub fn cluster_svg(points: &[Point], members: &[usize], pair: Option<(usize, usize)>) -> String {
    let frame = Frame::fit(points.iter().map(Point::to_f64), 0.0);
    let mut body = String::new();
    if let Some((p, q)) = pair {
        let (a, b) = (frame.map(points[p].to_f64()), frame.map(points[q].to_f64()));
        let _ = writeln!(
            body,
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#1f77b4\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>",
            a.0, a.1, b.0, b.1
        );
    }
    for (i, p) in points.iter().enumerate() {
        let (x, y) = frame.map(p.to_f64());
        let fill = if members.binary_search(&i).is_ok() {
            "#1f77b4"
        } else {
            "#bbb"
        };
        let _ = writeln!(body, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"{fill}\"/>");
    }
    document(SIZE, frame.height, &body)
}

/// Orthographic top view of the mesh; triangles colored by cycle.
pub fn strip_svg(m: &TriMesh, cycles: &[Vec<usize>]) -> String {
    let xy = |v: usize| {
        let p = &m.vertices()[v];
        (crate::rational::to_f64(&p[0]), crate::rational::to_f64(&p[1]))
    };
    let frame = Frame::fit((0..m.vertex_count()).map(xy), 0.0);
    let mut body = String::new();
    for (c, cycle) in cycles.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        for &t in cycle {
            let ring: Vec<(f64, f64)> = m.triangles()[t].iter().map(|&v| xy(v)).collect();
            let _ = writeln!(
                body,
                "<path d=\"{}\" fill=\"{color}\" fill-opacity=\"0.35\" stroke=\"#333\" stroke-width=\"0.5\"/>",
                frame.path(&ring)
            );
        }
    }
    document(SIZE, frame.height, &body)
}

/// Two tile drawings side by side, before and after optimization.
pub fn tiling_svg(before: &[Vec<(f64, f64)>], after: &[Vec<(f64, f64)>]) -> String {
    let left = Frame::fit(before.iter().flatten().copied(), 0.0);
    let right = Frame::fit(after.iter().flatten().copied(), SIZE);
    let mut body = String::new();
    for (frame, tiles) in [(&left, before), (&right, after)] {
        for (i, tile) in tiles.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let _ = writeln!(
                body,
                "<path d=\"{}\" fill=\"{color}\" fill-opacity=\"0.3\" stroke=\"#222\" stroke-width=\"1\"/>",
                frame.path(tile)
            );
        }
    }
    document(2.0 * SIZE, left.height.max(right.height), &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figures_are_well_formed() {
        let p = crate::gen::plus_polygon();
        let part = crate::rect_partition::min_rectangle_partition(&p).unwrap();
        let s = rectangles_svg(&p, &part);
        assert!(s.starts_with("<?xml"));
        assert!(s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("stroke-dasharray").count(), part.diagonals.len());
        assert_eq!(s, rectangles_svg(&p, &part));
        let c = crate::gen::comb(3);
        let cert = crate::art_gallery::fisk_guards(&c).unwrap();
        assert_eq!(gallery_svg(&c, &cert).matches("<circle").count(), 3);
        let pts = crate::gen::random_points(1, 6, 9);
        assert_eq!(cluster_svg(&pts, &[0, 2], Some((0, 2))).matches("<circle").count(), 6);
        let m = crate::strip::tetrahedron();
        assert_eq!(strip_svg(&m, &[vec![0, 1], vec![2, 3]]).matches("<path").count(), 4);
        let sq = vec![vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]];
        assert_eq!(tiling_svg(&sq, &sq).matches("<path").count(), 2);
    }
}

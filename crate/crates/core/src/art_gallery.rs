//! Guard placement by coloring a triangulation (three colors) or a
//! quadrilateralization with both diagonals of every quad (four colors).

use crate::geometry::{
    face_adjacency_is_tree, on_segment, orient, segments_intersect, shared_edge_adjacency, triangle_area, triangulate,
    Location, Point, Polygon, PolygonKind, Segment, SegmentIntersection, TriangulationError,
};
use crate::rational::{zero, Rational};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decomposition {
    Triangles(Vec<[usize; 3]>),
    Quads(Vec<[usize; 4]>),
}

impl Decomposition {
    pub fn faces(&self) -> Vec<Vec<usize>> {
        match self {
            Decomposition::Triangles(t) => t.iter().map(|f| f.to_vec()).collect(),
            Decomposition::Quads(q) => q.iter().map(|f| f.to_vec()).collect(),
        }
    }

    /// Colors needed: one per face corner.
    pub fn face_size(&self) -> usize {
        match self {
            Decomposition::Triangles(_) => 3,
            Decomposition::Quads(_) => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardCertificate {
    pub vertex_count: usize,
    pub decomposition: Decomposition,
    pub coloring: Vec<usize>,
    pub guard_color: usize,
    pub guards: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("quad {quad} uses vertex {vertex}, out of range")]
    IndexOutOfRange { quad: usize, vertex: usize },
    #[error("quad {quad} repeats a vertex")]
    RepeatedVertex { quad: usize },
    #[error("quad {quad} is not strictly convex")]
    NotConvex { quad: usize },
    #[error("side ({u}, {v}) of quad {quad} is neither a polygon side nor an interior diagonal")]
    BadSide { quad: usize, u: usize, v: usize },
    #[error("quads {a} and {b} overlap")]
    Overlap { a: usize, b: usize },
    #[error("quads cover area {covered}, polygon area is {expected}")]
    CoverageGap { covered: String, expected: String },
    #[error("dual graph of the quads is not a tree")]
    DualNotTree,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("guarding requires a hole-free polygon")]
    HasHoles,
    #[error("orthogonal guarding requires an orthogonal polygon")]
    NotOrthogonal,
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// A validated partition into convex quads with counterclockwise corners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quadrilateralization {
    pub quads: Vec<[usize; 4]>,
    pub dual: Vec<Vec<usize>>,
}

impl Quadrilateralization {
    /// Checks run in order and the first violation is reported: index
    /// range, convexity, sides, pairwise overlap, coverage, dual tree.
    pub fn new(poly: &Polygon, quads: Vec<[usize; 4]>) -> Result<Self, QuadError> {
        let n = poly.vertex_count();
        let mut normalized = Vec::with_capacity(quads.len());
        for (qi, q) in quads.iter().enumerate() {
            if let Some(&v) = q.iter().find(|&&v| v >= n) {
                return Err(QuadError::IndexOutOfRange { quad: qi, vertex: v });
            }
            let mut sorted = *q;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(QuadError::RepeatedVertex { quad: qi });
            }
        }
        for (qi, q) in quads.iter().enumerate() {
            let turns: Vec<Ordering> = (0..4)
                .map(|i| {
                    orient(
                        poly.vertex(q[i]),
                        poly.vertex(q[(i + 1) % 4]),
                        poly.vertex(q[(i + 2) % 4]),
                    )
                })
                .collect();
            let mut q = *q;
            if turns.iter().all(|&t| t == Ordering::Less) {
                q.reverse();
            } else if !turns.iter().all(|&t| t == Ordering::Greater) {
                return Err(QuadError::NotConvex { quad: qi });
            }
            normalized.push(q);
        }
        for (qi, q) in normalized.iter().enumerate() {
            for i in 0..4 {
                let (u, v) = (q[i], q[(i + 1) % 4]);
                if !is_side_or_diagonal(poly, u, v) {
                    return Err(QuadError::BadSide { quad: qi, u, v });
                }
            }
        }
        for a in 0..normalized.len() {
            for b in a + 1..normalized.len() {
                if convex_interiors_overlap(poly, &normalized[a], &normalized[b]) {
                    return Err(QuadError::Overlap { a, b });
                }
            }
        }
        let covered: Rational = normalized
            .iter()
            .map(|q| {
                triangle_area(poly.vertex(q[0]), poly.vertex(q[1]), poly.vertex(q[2]))
                    + triangle_area(poly.vertex(q[0]), poly.vertex(q[2]), poly.vertex(q[3]))
            })
            .sum();
        if covered != poly.area() {
            return Err(QuadError::CoverageGap {
                covered: crate::rational::format(&covered),
                expected: crate::rational::format(&poly.area()),
            });
        }
        let faces: Vec<Vec<usize>> = normalized.iter().map(|q| q.to_vec()).collect();
        let dual = shared_edge_adjacency(&faces);
        if !face_adjacency_is_tree(&dual) {
            return Err(QuadError::DualNotTree);
        }
        Ok(Quadrilateralization {
            quads: normalized,
            dual,
        })
    }
}

fn is_side_or_diagonal(poly: &Polygon, u: usize, v: usize) -> bool {
    if poly.next(u) == v || poly.next(v) == u {
        return true;
    }
    let (pu, pv) = (poly.vertex(u), poly.vertex(v));
    let diag = Segment::new(pu.clone(), pv.clone());
    for edge in poly.edge_segments() {
        match segments_intersect(&diag, &edge) {
            SegmentIntersection::Disjoint => {}
            SegmentIntersection::EndpointTouch(p) if &p == pu || &p == pv => {}
            _ => return false,
        }
    }
    // Collinear vertices strictly inside the diagonal would be touches above.
    poly.locate(&pu.midpoint(pv)) == Location::Inside
}

/// Separating-axis test on two counterclockwise convex polygons: interiors
/// are disjoint iff some edge line has the other polygon on its closed
/// outer side.
fn convex_interiors_overlap(poly: &Polygon, a: &[usize], b: &[usize]) -> bool {
    let pa: Vec<&Point> = a.iter().map(|&i| poly.vertex(i)).collect();
    let pb: Vec<&Point> = b.iter().map(|&i| poly.vertex(i)).collect();
    let separated = |p: &[&Point], q: &[&Point]| {
        (0..p.len()).any(|i| {
            let (s, t) = (p[i], p[(i + 1) % p.len()]);
            q.iter().all(|x| orient(s, t, x) != Ordering::Greater)
        })
    };
    !(separated(&pa, &pb) || separated(&pb, &pa))
}

/// Dual-tree traversal from face 0: the root takes colors `0..k`, and every
/// later face colors its fresh corners with the smallest colors its
/// already-colored corners leave free.
fn color_faces(vertex_count: usize, faces: &[Vec<usize>], dual: &[Vec<usize>], k: usize) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let mut color = vec![UNSET; vertex_count];
    if faces.is_empty() {
        return color;
    }
    let mut seen = vec![false; faces.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        let face = &faces[f];
        let used: Vec<usize> = face.iter().map(|&v| color[v]).filter(|&c| c != UNSET).collect();
        let mut free = (0..k).filter(|c| !used.contains(c));
        for &v in face {
            if color[v] == UNSET {
                color[v] = free.next().expect("a face has as many colors as corners");
            }
        }
        for &g in &dual[f] {
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
    }
    color
}

fn certificate(vertex_count: usize, decomposition: Decomposition, dual: &[Vec<usize>]) -> GuardCertificate {
    let k = decomposition.face_size();
    let faces = decomposition.faces();
    let coloring = color_faces(vertex_count, &faces, dual, k);
    let mut class_sizes = vec![0usize; k];
    for &c in &coloring {
        if c < k {
            class_sizes[c] += 1;
        }
    }
    let guard_color = (0..k).min_by_key(|&c| (class_sizes[c], c)).unwrap_or(0);
    let guards = (0..vertex_count).filter(|&v| coloring[v] == guard_color).collect();
    GuardCertificate {
        vertex_count,
        decomposition,
        coloring,
        guard_color,
        guards,
    }
}

/// At most `⌊n/3⌋` vertex guards for a hole-free simple polygon.
pub fn fisk_guards(poly: &Polygon) -> Result<GuardCertificate, GalleryError> {
    if poly.has_holes() {
        return Err(GalleryError::HasHoles);
    }
    let t = triangulate(poly)?;
    Ok(certificate(
        poly.vertex_count(),
        Decomposition::Triangles(t.triangles),
        &t.dual,
    ))
}

/// At most `⌊n/4⌋` vertex guards for an orthogonal polygon with a given
/// quadrilateralization.
pub fn orthogonal_guards(poly: &Polygon, q: &Quadrilateralization) -> Result<GuardCertificate, GalleryError> {
    if poly.has_holes() {
        return Err(GalleryError::HasHoles);
    }
    if poly.kind != PolygonKind::Orthogonal {
        return Err(GalleryError::NotOrthogonal);
    }
    Ok(certificate(
        poly.vertex_count(),
        Decomposition::Quads(q.quads.clone()),
        &q.dual,
    ))
}

/// Proper coloring on every face, a guard in every face, and the size bound.
pub fn verify_guard_certificate(cert: &GuardCertificate) -> bool {
    let k = cert.decomposition.face_size();
    let n = cert.vertex_count;
    if cert.coloring.len() != n {
        return false;
    }
    let mut is_guard = vec![false; n];
    for &g in &cert.guards {
        if g >= n || is_guard[g] {
            return false;
        }
        is_guard[g] = true;
    }
    for face in cert.decomposition.faces() {
        if face.iter().any(|&v| v >= n || cert.coloring[v] >= k) {
            return false;
        }
        let mut colors: Vec<usize> = face.iter().map(|&v| cert.coloring[v]).collect();
        colors.sort_unstable();
        colors.dedup();
        if colors.len() != face.len() || !face.iter().any(|&v| is_guard[v]) {
            return false;
        }
    }
    cert.guards.len() <= n / k
}

/// Each corner of every triangle as a point, for rendering.
pub fn face_points(poly: &Polygon, cert: &GuardCertificate) -> Vec<Vec<Point>> {
    cert.decomposition
        .faces()
        .iter()
        .map(|f| f.iter().map(|&v| poly.vertex(v).clone()).collect())
        .collect()
}

/// Exact area covered by the decomposition faces.
pub fn decomposition_area(poly: &Polygon, cert: &GuardCertificate) -> Rational {
    let mut total = zero();
    for f in cert.decomposition.faces() {
        for i in 1..f.len() - 1 {
            total += triangle_area(poly.vertex(f[0]), poly.vertex(f[i]), poly.vertex(f[i + 1]));
        }
    }
    total
}

/// True when `p` lies in the closed face `f` (convex, counterclockwise).
pub fn face_contains(poly: &Polygon, face: &[usize], p: &Point) -> bool {
    (0..face.len()).all(|i| {
        let (a, b) = (poly.vertex(face[i]), poly.vertex(face[(i + 1) % face.len()]));
        orient(a, b, p) != Ordering::Less || on_segment(p, a, b)
    })
}

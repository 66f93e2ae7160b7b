//! Minimum partition of an orthogonal polygon (holes allowed) into
//! rectangles via a maximum set of disjoint good diagonals.

use crate::geometry::{
    ring_area, segments_intersect, Location, Point, Polygon, PolygonKind, Segment, SegmentIntersection,
};
use crate::graph::{konig_independent_set, max_bipartite_matching, BipartiteGraph};
use crate::rational::{self, Rational};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodDiagonal {
    pub segment: Segment,
    pub orientation: Axis,
    /// Global vertex indices, smaller first.
    pub endpoints: (usize, usize),
}

impl GoodDiagonal {
    fn key(&self) -> (Axis, usize, usize) {
        (self.orientation, self.endpoints.0, self.endpoints.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rect {
    pub xmin: Rational,
    pub ymin: Rational,
    pub xmax: Rational,
    pub ymax: Rational,
}

impl Rect {
    pub fn area(&self) -> Rational {
        (&self.xmax - &self.xmin) * (&self.ymax - &self.ymin)
    }
}

impl Serialize for Rect {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [&self.xmin, &self.ymin, &self.xmax, &self.ymax]
            .map(rational::to_json)
            .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectPartition {
    pub rectangles: Vec<Rect>,
    pub diagonals: Vec<GoodDiagonal>,
    pub cuts: Vec<Segment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RectError {
    #[error("rectangle partition requires an orthogonal polygon")]
    NotOrthogonal,
    #[error("diagonals {0} and {1} share an orientation and intersect")]
    SameOrientationIntersection(usize, usize),
    #[error("diagonal {0} is not a good diagonal of the polygon")]
    NotGood(usize),
    #[error("diagonals {0} and {1} intersect")]
    NotDisjoint(usize, usize),
    #[error("traced face {0} is not a rectangle")]
    FaceNotRectangle(usize),
    #[error("rectangles cover area {covered}, polygon area is {expected}")]
    AreaMismatch { covered: String, expected: String },
}

/// Vertices with a 270° interior angle, in global index order.
pub fn concave_vertices(poly: &Polygon) -> Vec<usize> {
    (0..poly.vertex_count())
        .filter(|&i| poly.turn(i) == Ordering::Less)
        .collect()
}

/// True when the closed segment `uv` meets the boundary only at `u` and
/// `v` and its midpoint is interior.
fn is_interior_chord(poly: &Polygon, edges: &[Segment], seg: &Segment) -> bool {
    for e in edges {
        match segments_intersect(seg, e) {
            SegmentIntersection::Disjoint => {}
            SegmentIntersection::EndpointTouch(p) if p == seg.a || p == seg.b => {}
            _ => return false,
        }
    }
    poly.locate(&seg.a.midpoint(&seg.b)) == Location::Inside
}

/// All good diagonals, sorted horizontal first, then by endpoint indices.
pub fn good_diagonals(poly: &Polygon) -> Result<Vec<GoodDiagonal>, RectError> {
    if poly.kind != PolygonKind::Orthogonal {
        return Err(RectError::NotOrthogonal);
    }
    let concave = concave_vertices(poly);
    let edges = poly.edge_segments();
    let mut out = Vec::new();
    for (x, &u) in concave.iter().enumerate() {
        for &v in &concave[x + 1..] {
            let (pu, pv) = (poly.vertex(u), poly.vertex(v));
            let orientation = if pu.y == pv.y {
                Axis::Horizontal
            } else if pu.x == pv.x {
                Axis::Vertical
            } else {
                continue;
            };
            let segment = Segment::new(pu.clone(), pv.clone());
            if is_interior_chord(poly, &edges, &segment) {
                out.push(GoodDiagonal {
                    segment,
                    orientation,
                    endpoints: (u, v),
                });
            }
        }
    }
    out.sort_by_key(|d| d.key());
    Ok(out)
}

/// Closed segments meet, shared endpoints included.
fn touches(a: &Segment, b: &Segment) -> bool {
    segments_intersect(a, b) != SegmentIntersection::Disjoint
}

/// Maximum pairwise-disjoint subset via the horizontal/vertical bipartite
/// intersection graph, a maximum matching and König's construction.
/// Returned in input order.
pub fn max_disjoint_diagonals(ds: &[GoodDiagonal]) -> Result<Vec<GoodDiagonal>, RectError> {
    let hs: Vec<usize> = (0..ds.len())
        .filter(|&i| ds[i].orientation == Axis::Horizontal)
        .collect();
    let vs: Vec<usize> = (0..ds.len()).filter(|&i| ds[i].orientation == Axis::Vertical).collect();
    for group in [&hs, &vs] {
        for (x, &i) in group.iter().enumerate() {
            for &j in &group[x + 1..] {
                if touches(&ds[i].segment, &ds[j].segment) {
                    return Err(RectError::SameOrientationIntersection(i, j));
                }
            }
        }
    }
    let mut edges = Vec::new();
    for (l, &h) in hs.iter().enumerate() {
        for (r, &v) in vs.iter().enumerate() {
            if touches(&ds[h].segment, &ds[v].segment) {
                edges.push((l, r));
            }
        }
    }
    let g = BipartiteGraph::new(hs.len(), vs.len(), edges).expect("indices in range, no duplicates");
    let m = max_bipartite_matching(&g);
    let set = konig_independent_set(&g, &m).expect("matching is maximum");
    let mut chosen: Vec<usize> = set
        .left
        .iter()
        .map(|&l| hs[l])
        .chain(set.right.iter().map(|&r| vs[r]))
        .collect();
    chosen.sort_unstable();
    Ok(chosen.into_iter().map(|i| ds[i].clone()).collect())
}

const EAST: usize = 0;
const NORTH: usize = 1;
const WEST: usize = 2;
const SOUTH: usize = 3;

fn direction_of(from: &Point, to: &Point) -> usize {
    match (to.x.cmp(&from.x), to.y.cmp(&from.y)) {
        (Ordering::Greater, Ordering::Equal) => EAST,
        (Ordering::Equal, Ordering::Greater) => NORTH,
        (Ordering::Less, Ordering::Equal) => WEST,
        (Ordering::Equal, Ordering::Less) => SOUTH,
        _ => panic!("segment {from:?} -> {to:?} is not axis-parallel"),
    }
}

fn along_across(p: &Point, horizontal: bool) -> (&Rational, &Rational) {
    if horizontal {
        (&p.x, &p.y)
    } else {
        (&p.y, &p.x)
    }
}

/// Nearest point hit by the ray from `origin` in `dir`, over all segments.
fn shoot(origin: &Point, dir: usize, segments: &[Segment]) -> Point {
    let horizontal = dir == EAST || dir == WEST;
    let sign = if dir == EAST || dir == NORTH {
        rational::one()
    } else {
        -rational::one()
    };
    let (o_along, o_across) = along_across(origin, horizontal);
    let mut best: Option<Rational> = None;
    for s in segments {
        let (a_along, a_across) = along_across(&s.a, horizontal);
        let (b_along, b_across) = along_across(&s.b, horizontal);
        let t = if a_across == b_across {
            // Parallel: only a collinear segment ahead can be hit.
            if a_across != o_across {
                continue;
            }
            let ta = (a_along - o_along) * &sign;
            let tb = (b_along - o_along) * &sign;
            rational::min(&ta, &tb)
        } else {
            let (lo, hi) = if a_across < b_across {
                (a_across, b_across)
            } else {
                (b_across, a_across)
            };
            if o_across < lo || o_across > hi {
                continue;
            }
            (a_along - o_along) * &sign
        };
        if t <= rational::zero() {
            continue;
        }
        if best.as_ref().is_none_or(|b| &t < b) {
            best = Some(t);
        }
    }
    let t = best.expect("a ray from an interior direction always hits the boundary");
    let hit_along = o_along + &t * &sign;
    if horizontal {
        Point::new(hit_along, o_across.clone())
    } else {
        Point::new(o_across.clone(), hit_along)
    }
}

/// Each bad vertex (concave, not on `G`) emits one cut toward the nearest
/// polygon side, diagonal or earlier cut. The preferred direction continues
/// the shorter incident edge, horizontal on ties. A bad vertex already hit
/// by an earlier cut needs none.
pub fn build_partition(poly: &Polygon, g: &[GoodDiagonal]) -> Result<RectPartition, RectError> {
    if poly.kind != PolygonKind::Orthogonal {
        return Err(RectError::NotOrthogonal);
    }
    let all_good = good_diagonals(poly)?;
    for (i, d) in g.iter().enumerate() {
        if !all_good.iter().any(|x| x.endpoints == d.endpoints) {
            return Err(RectError::NotGood(i));
        }
    }
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if touches(&g[i].segment, &g[j].segment) {
                return Err(RectError::NotDisjoint(i, j));
            }
        }
    }
    let mut resolved: BTreeSet<usize> = g.iter().flat_map(|d| [d.endpoints.0, d.endpoints.1]).collect();
    let mut blockers: Vec<Segment> = poly.edge_segments();
    blockers.extend(g.iter().map(|d| d.segment.clone()));
    let mut cuts = Vec::new();
    let vertex_of: BTreeMap<Point, usize> = (0..poly.vertex_count()).map(|i| (poly.vertex(i).clone(), i)).collect();
    for v in concave_vertices(poly) {
        if resolved.contains(&v) {
            continue;
        }
        let (p, pv, q) = (poly.vertex(poly.prev(v)), poly.vertex(v), poly.vertex(poly.next(v)));
        // Continuations beyond v of the incoming and the outgoing edge.
        let d_in = direction_of(p, pv);
        let d_out = (direction_of(pv, q) + 2) % 4;
        let len_in = p.dist2(pv);
        let len_out = pv.dist2(q);
        let in_is_horizontal = d_in == EAST || d_in == WEST;
        let dir = match len_in.cmp(&len_out) {
            Ordering::Less => d_in,
            Ordering::Greater => d_out,
            Ordering::Equal if in_is_horizontal => d_in,
            Ordering::Equal => d_out,
        };
        let hit = shoot(pv, dir, &blockers);
        if let Some(&w) = vertex_of.get(&hit) {
            resolved.insert(w);
        }
        let cut = Segment::new(pv.clone(), hit);
        blockers.push(cut.clone());
        cuts.push(cut);
        resolved.insert(v);
    }
    let rectangles = trace_rectangles(poly, g, &cuts)?;
    Ok(RectPartition {
        rectangles,
        diagonals: g.to_vec(),
        cuts,
    })
}

fn trace_rectangles(poly: &Polygon, g: &[GoodDiagonal], cuts: &[Segment]) -> Result<Vec<Rect>, RectError> {
    // Directed boundary pieces keep the interior on their left.
    let mut pieces: Vec<(Segment, bool)> = poly.edge_segments().into_iter().map(|s| (s, true)).collect();
    pieces.extend(g.iter().map(|d| (d.segment.clone(), false)));
    pieces.extend(cuts.iter().map(|c| (c.clone(), false)));
    let points: BTreeSet<Point> = pieces.iter().flat_map(|(s, _)| [s.a.clone(), s.b.clone()]).collect();

    // Half-edges keyed by (from, direction); the flag marks a reversed
    // polygon side, whose left is exterior.
    let mut out: BTreeMap<(Point, usize), (Point, bool)> = BTreeMap::new();
    for (s, is_boundary) in &pieces {
        let mut cuts_on: Vec<&Point> = points.iter().filter(|p| s.contains(p)).collect();
        cuts_on.sort_by(|x, y| x.dist2(&s.a).cmp(&y.dist2(&s.a)));
        for w in cuts_on.windows(2) {
            let (a, b) = (w[0], w[1]);
            out.insert((a.clone(), direction_of(a, b)), (b.clone(), false));
            out.insert((b.clone(), direction_of(b, a)), (a.clone(), *is_boundary));
        }
    }

    let mut used: BTreeSet<(Point, usize)> = BTreeSet::new();
    let mut rects = Vec::new();
    let mut area = rational::zero();
    let keys: Vec<(Point, usize)> = out.keys().cloned().collect();
    for start in keys {
        if used.contains(&start) {
            continue;
        }
        let mut ring = Vec::new();
        let mut exterior = false;
        let mut cur = start.clone();
        loop {
            used.insert(cur.clone());
            let (to, reversed) = out[&cur].clone();
            exterior |= reversed;
            ring.push(cur.0.clone());
            let back = (cur.1 + 2) % 4;
            // First outgoing direction clockwise from the way back.
            let next_dir = (1..=4)
                .map(|k| (back + 4 - k) % 4)
                .find(|d| out.contains_key(&(to.clone(), *d)))
                .expect("every vertex has an outgoing half-edge");
            cur = (to, next_dir);
            if cur == start {
                break;
            }
        }
        if exterior {
            continue;
        }
        let idx = rects.len();
        let corners: Vec<&Point> = (0..ring.len())
            .filter(|&i| {
                let prev = &ring[(i + ring.len() - 1) % ring.len()];
                let next = &ring[(i + 1) % ring.len()];
                crate::geometry::orient(prev, &ring[i], next) != Ordering::Equal
            })
            .map(|i| &ring[i])
            .collect();
        if corners.len() != 4 || ring_area(&ring) <= rational::zero() {
            return Err(RectError::FaceNotRectangle(idx));
        }
        let xs: Vec<&Rational> = corners.iter().map(|p| &p.x).collect();
        let ys: Vec<&Rational> = corners.iter().map(|p| &p.y).collect();
        let rect = Rect {
            xmin: (*xs.iter().min().unwrap()).clone(),
            ymin: (*ys.iter().min().unwrap()).clone(),
            xmax: (*xs.iter().max().unwrap()).clone(),
            ymax: (*ys.iter().max().unwrap()).clone(),
        };
        if rect.area() != ring_area(&ring) {
            return Err(RectError::FaceNotRectangle(idx));
        }
        area += rect.area();
        rects.push(rect);
    }
    if area != poly.area() {
        return Err(RectError::AreaMismatch {
            covered: rational::format(&area),
            expected: rational::format(&poly.area()),
        });
    }
    rects.sort();
    Ok(rects)
}

pub fn min_rectangle_partition(poly: &Polygon) -> Result<RectPartition, RectError> {
    let ds = good_diagonals(poly)?;
    let g = max_disjoint_diagonals(&ds)?;
    build_partition(poly, &g)
}

/// `n/2 + h − |G| − 1`.
pub fn predicted_count(poly: &Polygon, g: usize) -> usize {
    poly.vertex_count() / 2 + poly.holes().len() - g - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn plus() -> Polygon {
        Polygon::from_int_ring(
            PolygonKind::Orthogonal,
            &[
                (1, 0),
                (2, 0),
                (2, 1),
                (3, 1),
                (3, 2),
                (2, 2),
                (2, 3),
                (1, 3),
                (1, 2),
                (0, 2),
                (0, 1),
                (1, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn plus_polygon() {
        let p = plus();
        assert_eq!(concave_vertices(&p).len(), 4);
        let ds = good_diagonals(&p).unwrap();
        assert_eq!(ds.len(), 4);
        assert_eq!(ds.iter().filter(|d| d.orientation == Axis::Horizontal).count(), 2);
        let g = max_disjoint_diagonals(&ds).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g[0].orientation == g[1].orientation);
        let part = build_partition(&p, &ds[..2]).unwrap();
        assert_eq!(part.rectangles.len(), 3);
        assert_eq!(min_rectangle_partition(&p).unwrap().rectangles.len(), 3);
    }

    #[test]
    fn rectangle_and_l_shape() {
        let r = Polygon::from_int_ring(PolygonKind::Orthogonal, &[(0, 0), (3, 0), (3, 2), (0, 2)]).unwrap();
        assert!(good_diagonals(&r).unwrap().is_empty());
        assert_eq!(build_partition(&r, &[]).unwrap().rectangles.len(), 1);
        let l = Polygon::from_int_ring(
            PolygonKind::Orthogonal,
            &[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        assert!(good_diagonals(&l).unwrap().is_empty());
        let part = min_rectangle_partition(&l).unwrap();
        assert_eq!(part.rectangles.len(), 2);
        assert_eq!(part.cuts.len(), 1);
    }

    #[test]
    fn square_annulus() {
        let outer = [(0, 0), (6, 0), (6, 6), (0, 6)];
        let hole = [(2, 2), (2, 4), (4, 4), (4, 2)];
        let p = Polygon::new(
            PolygonKind::Orthogonal,
            outer.iter().map(|&(x, y)| Point::from_ints(x, y)).collect(),
            vec![hole.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()],
        )
        .unwrap();
        assert_eq!(concave_vertices(&p).len(), 4);
        assert!(good_diagonals(&p).unwrap().is_empty());
        let part = build_partition(&p, &[]).unwrap();
        assert_eq!(part.rectangles.len(), 4);
        assert_eq!(predicted_count(&p, 0), 4);
    }

    #[test]
    fn crossing_pair_keeps_one() {
        let p = plus();
        let ds = good_diagonals(&p).unwrap();
        let crossing = vec![ds[0].clone(), ds[2].clone()];
        assert_eq!(max_disjoint_diagonals(&crossing).unwrap().len(), 1);
        assert!(max_disjoint_diagonals(&[]).unwrap().is_empty());
        assert_eq!(build_partition(&p, &crossing), Err(RectError::NotDisjoint(0, 1)));
    }
}

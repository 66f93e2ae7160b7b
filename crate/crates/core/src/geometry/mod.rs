//! Exact planar primitives: points, segments, orientation and the
//! predicates every geometric solver in this crate is built on.

mod polygon;
mod triangulate;

pub use polygon::{Location, Polygon, PolygonError, PolygonKind};
pub(crate) use triangulate::{face_adjacency_is_tree, shared_edge_adjacency};
pub use triangulate::{triangle_area, triangulate, Triangulation, TriangulationError};

use crate::rational::{self, Rational};
use num::{Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rational::int(x), rational::int(y))
    }

    pub fn dist2(&self, other: &Point) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = rational::ratio(1, 2);
        Point::new((&self.x + &other.x) * &half, (&self.y + &other.y) * &half)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.x), rational::to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rational::format(&self.x), rational::format(&self.y))
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&rational::to_json(&self.x))?;
        t.serialize_element(&rational::to_json(&self.y))?;
        t.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Panics when the endpoints coincide.
    pub fn new(a: Point, b: Point) -> Self {
        assert!(a != b, "degenerate segment at {a:?}");
        Segment { a, b }
    }

    pub fn contains(&self, p: &Point) -> bool {
        on_segment(p, &self.a, &self.b)
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x
    }
}

/// Twice the signed area of triangle `abc`.
pub fn cross(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// `Greater` for a left (counterclockwise) turn, `Less` for a right turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    let c = cross(a, b, c);
    if c.is_positive() {
        Ordering::Greater
    } else if c.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Closed-segment membership.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= rational::min(&a.x, &b.x)
        && p.x <= rational::max(&a.x, &b.x)
        && p.y >= rational::min(&a.y, &b.y)
        && p.y <= rational::max(&a.y, &b.y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    Disjoint,
    /// A single common point interior to both segments.
    Crossing(Point),
    /// A single common point that is an endpoint of at least one segment.
    EndpointTouch(Point),
    /// Collinear with a common piece of positive length.
    Overlap,
}

pub fn segments_intersect(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let (a, b, c, d) = (&s1.a, &s1.b, &s2.a, &s2.b);
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);

    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        // Collinear: points on a common line are totally ordered lexicographically.
        let (p1, q1) = if a <= b { (a, b) } else { (b, a) };
        let (p2, q2) = if c <= d { (c, d) } else { (d, c) };
        let lo = if p1 >= p2 { p1 } else { p2 };
        let hi = if q1 <= q2 { q1 } else { q2 };
        return match lo.cmp(hi) {
            Ordering::Greater => SegmentIntersection::Disjoint,
            Ordering::Equal => SegmentIntersection::EndpointTouch(lo.clone()),
            Ordering::Less => SegmentIntersection::Overlap,
        };
    }

    let opposite = |x: Ordering, y: Ordering| {
        (x == Ordering::Greater && y == Ordering::Less) || (x == Ordering::Less && y == Ordering::Greater)
    };
    if opposite(o1, o2) && opposite(o3, o4) {
        let r = b - a;
        let s = d - c;
        let denom = &r.0 * &s.1 - &r.1 * &s.0;
        let t = ((&c.x - &a.x) * &s.1 - (&c.y - &a.y) * &s.0) / denom;
        return SegmentIntersection::Crossing(Point::new(&a.x + &r.0 * &t, &a.y + &r.1 * &t));
    }

    for (p, seg_a, seg_b) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
        if on_segment(p, seg_a, seg_b) {
            return SegmentIntersection::EndpointTouch(p.clone());
        }
    }
    SegmentIntersection::Disjoint
}

impl<'a> std::ops::Sub<&'a Point> for &'a Point {
    type Output = (Rational, Rational);

    fn sub(self, rhs: &'a Point) -> (Rational, Rational) {
        (&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

/// Signed area of a closed ring (positive when counterclockwise).
pub fn ring_area(ring: &[Point]) -> Rational {
    let n = ring.len();
    let mut twice = Rational::zero();
    for i in 0..n {
        let p = &ring[i];
        let q = &ring[(i + 1) % n];
        twice += &p.x * &q.y - &q.x * &p.y;
    }
    twice / rational::int(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LunePosition {
    /// Strictly left of the directed line `pq`.
    SideA,
    /// Strictly right of the directed line `pq`.
    SideB,
    OnAxis,
    Outside,
}

/// Classifies `x` against the closed lune of radius `|pq|` centred at `p`
/// and `q`; the side follows the orientation of `(p, q, x)`.
pub fn lune_contains(p: &Point, q: &Point, x: &Point) -> LunePosition {
    let r2 = p.dist2(q);
    if x.dist2(p) > r2 || x.dist2(q) > r2 {
        return LunePosition::Outside;
    }
    match orient(p, q, x) {
        Ordering::Greater => LunePosition::SideA,
        Ordering::Less => LunePosition::SideB,
        Ordering::Equal => LunePosition::OnAxis,
    }
}

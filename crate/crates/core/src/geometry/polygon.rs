use super::{on_segment, orient, ring_area, segments_intersect, Point, Segment, SegmentIntersection};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonKind {
    Simple,
    Orthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Ring 0 is the outer boundary; ring `h + 1` is hole `h`.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("ring {ring} has {count} vertices; at least 3 are required")]
    TooFewVertices { ring: usize, count: usize },
    #[error("ring {ring} repeats vertex {point:?}")]
    DuplicateVertex { ring: usize, point: Point },
    #[error("ring {ring}: edges meeting at vertex {index} are collinear")]
    CollinearEdges { ring: usize, index: usize },
    #[error("ring {ring}: edge from vertex {index} is not axis-parallel")]
    NonAxisEdge { ring: usize, index: usize },
    #[error("edge {edge_a} of ring {ring_a} meets edge {edge_b} of ring {ring_b}")]
    SelfIntersection {
        ring_a: usize,
        edge_a: usize,
        ring_b: usize,
        edge_b: usize,
    },
    #[error("ring {ring} has the wrong orientation (outer must be counterclockwise, holes clockwise)")]
    WrongOrientation { ring: usize },
    #[error("hole {hole} is not inside the outer boundary")]
    HoleOutside { hole: usize },
    #[error("hole {inner} lies inside hole {outer}")]
    NestedHoles { outer: usize, inner: usize },
}

/// A validated polygon. Vertices carry global indices: the outer ring
/// first, then each hole in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polygon {
    pub kind: PolygonKind,
    outer: Vec<Point>,
    holes: Vec<Vec<Point>>,
    #[serde(skip)]
    offsets: Vec<usize>,
}

impl Polygon {
    pub fn new(kind: PolygonKind, outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Result<Self, PolygonError> {
        let mut offsets = vec![0];
        offsets.push(outer.len());
        for h in &holes {
            offsets.push(offsets.last().unwrap() + h.len());
        }
        let poly = Polygon {
            kind,
            outer,
            holes,
            offsets,
        };
        poly.validate()?;
        Ok(poly)
    }

    pub fn simple(outer: Vec<Point>) -> Result<Self, PolygonError> {
        Polygon::new(PolygonKind::Simple, outer, Vec::new())
    }

    pub fn from_int_ring(kind: PolygonKind, ring: &[(i64, i64)]) -> Result<Self, PolygonError> {
        let outer = ring.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
        Polygon::new(kind, outer, Vec::new())
    }

    pub fn outer(&self) -> &[Point] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Point>] {
        &self.holes
    }

    pub fn has_holes(&self) -> bool {
        !self.holes.is_empty()
    }

    pub fn rings(&self) -> impl Iterator<Item = &[Point]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(|h| h.as_slice()))
    }

    pub fn vertex_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn vertex(&self, index: usize) -> &Point {
        let (ring, local) = self.locate_index(index);
        &self.ring(ring)[local]
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.rings().flat_map(|r| r.iter().cloned()).collect()
    }

    /// Global index of the successor along the vertex's own ring.
    pub fn next(&self, index: usize) -> usize {
        let (ring, local) = self.locate_index(index);
        let len = self.ring(ring).len();
        self.offsets[ring] + (local + 1) % len
    }

    pub fn prev(&self, index: usize) -> usize {
        let (ring, local) = self.locate_index(index);
        let len = self.ring(ring).len();
        self.offsets[ring] + (local + len - 1) % len
    }

    /// Boundary edges as `(i, next(i))` for every global index `i`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count()).map(|i| (i, self.next(i))).collect()
    }

    pub fn edge_segments(&self) -> Vec<Segment> {
        self.edges()
            .into_iter()
            .map(|(i, j)| Segment::new(self.vertex(i).clone(), self.vertex(j).clone()))
            .collect()
    }

    /// Exact area, holes subtracted.
    pub fn area(&self) -> Rational {
        self.rings().map(ring_area).sum()
    }

    /// `Less` at a reflex vertex, `Greater` at a convex one.
    pub fn turn(&self, index: usize) -> Ordering {
        orient(
            self.vertex(self.prev(index)),
            self.vertex(index),
            self.vertex(self.next(index)),
        )
    }

    pub fn locate(&self, p: &Point) -> Location {
        for ring in self.rings() {
            if ring_location(ring, p) == Location::Boundary {
                return Location::Boundary;
            }
        }
        if ring_location(&self.outer, p) == Location::Outside {
            return Location::Outside;
        }
        if self.holes.iter().any(|h| ring_location(h, p) == Location::Inside) {
            return Location::Outside;
        }
        Location::Inside
    }

    fn ring(&self, ring: usize) -> &[Point] {
        if ring == 0 {
            &self.outer
        } else {
            &self.holes[ring - 1]
        }
    }

    fn locate_index(&self, index: usize) -> (usize, usize) {
        assert!(index < self.vertex_count(), "vertex index {index} out of range");
        let ring = self.offsets.partition_point(|&o| o <= index) - 1;
        (ring, index - self.offsets[ring])
    }

    fn validate(&self) -> Result<(), PolygonError> {
        let rings: Vec<&[Point]> = self.rings().collect();
        for (r, ring) in rings.iter().enumerate() {
            let n = ring.len();
            if n < 3 {
                return Err(PolygonError::TooFewVertices { ring: r, count: n });
            }
            let mut sorted: Vec<&Point> = ring.iter().collect();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(PolygonError::DuplicateVertex {
                    ring: r,
                    point: w[0].clone(),
                });
            }
            for i in 0..n {
                let prev = &ring[(i + n - 1) % n];
                let next = &ring[(i + 1) % n];
                if orient(prev, &ring[i], next) == Ordering::Equal {
                    return Err(PolygonError::CollinearEdges { ring: r, index: i });
                }
                if self.kind == PolygonKind::Orthogonal && ring[i].x != next.x && ring[i].y != next.y {
                    return Err(PolygonError::NonAxisEdge { ring: r, index: i });
                }
            }
        }

        let mut edges = Vec::new();
        for (r, ring) in rings.iter().enumerate() {
            let n = ring.len();
            for i in 0..n {
                edges.push((r, i, n, Segment::new(ring[i].clone(), ring[(i + 1) % n].clone())));
            }
        }
        for (x, (ra, ea, na, sa)) in edges.iter().enumerate() {
            for (rb, eb, _, sb) in &edges[x + 1..] {
                let hit = segments_intersect(sa, sb);
                let adjacent = ra == rb && (eb == &((ea + 1) % na) || ea == &((eb + 1) % na));
                let ok = match &hit {
                    SegmentIntersection::Disjoint => true,
                    SegmentIntersection::EndpointTouch(p) => {
                        adjacent && (p == &sa.a || p == &sa.b) && (p == &sb.a || p == &sb.b)
                    }
                    _ => false,
                };
                if !ok {
                    return Err(PolygonError::SelfIntersection {
                        ring_a: *ra,
                        edge_a: *ea,
                        ring_b: *rb,
                        edge_b: *eb,
                    });
                }
            }
        }

        for (r, ring) in rings.iter().enumerate() {
            let area = ring_area(ring);
            let positive = area > Rational::from_integer(0.into());
            if (r == 0) != positive {
                return Err(PolygonError::WrongOrientation { ring: r });
            }
        }

        // Rings are pairwise disjoint, so one vertex decides containment.
        for (h, hole) in self.holes.iter().enumerate() {
            if ring_location(&self.outer, &hole[0]) != Location::Inside {
                return Err(PolygonError::HoleOutside { hole: h });
            }
            for (g, other) in self.holes.iter().enumerate() {
                if g != h && ring_location(other, &hole[0]) == Location::Inside {
                    return Err(PolygonError::NestedHoles { outer: g, inner: h });
                }
            }
        }
        Ok(())
    }
}

/// Location against the region bounded by a single ring, orientation ignored.
pub(crate) fn ring_location(ring: &[Point], p: &Point) -> Location {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        if on_segment(p, a, b) {
            return Location::Boundary;
        }
        // Half-open rule on y avoids double counting at vertices.
        if (a.y > p.y) != (b.y > p.y) {
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn square(size: i64) -> Polygon {
        Polygon::from_int_ring(PolygonKind::Orthogonal, &[(0, 0), (size, 0), (size, size), (0, size)]).unwrap()
    }

    #[test]
    fn unit_square_locations() {
        let sq = square(1);
        let half = ratio(1, 2);
        assert_eq!(sq.locate(&Point::new(half.clone(), half.clone())), Location::Inside);
        assert_eq!(sq.locate(&Point::new(int(0), half)), Location::Boundary);
        assert_eq!(sq.locate(&Point::from_ints(2, 2)), Location::Outside);
        assert_eq!(sq.area(), int(1));
    }

    #[test]
    fn holes_count_as_outside() {
        let outer = [(0, 0), (6, 0), (6, 6), (0, 6)];
        let hole = [(2, 2), (2, 4), (4, 4), (4, 2)];
        let poly = Polygon::new(
            PolygonKind::Orthogonal,
            outer.iter().map(|&(x, y)| Point::from_ints(x, y)).collect(),
            vec![hole.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()],
        )
        .unwrap();
        assert_eq!(poly.locate(&Point::from_ints(3, 3)), Location::Outside);
        assert_eq!(poly.locate(&Point::from_ints(2, 3)), Location::Boundary);
        assert_eq!(poly.locate(&Point::from_ints(1, 1)), Location::Inside);
        assert_eq!(poly.area(), int(32));
        assert_eq!(poly.vertex_count(), 8);
        assert_eq!(poly.next(7), 4);
        assert_eq!(poly.prev(4), 7);
    }

    #[test]
    fn rejects_malformed_rings() {
        let bowtie = [(0, 0), (2, 2), (2, 0), (0, 2)];
        assert!(matches!(
            Polygon::from_int_ring(PolygonKind::Simple, &bowtie),
            Err(PolygonError::SelfIntersection { .. })
        ));
        let collinear = [(0, 0), (1, 0), (2, 0), (2, 2)];
        assert!(matches!(
            Polygon::from_int_ring(PolygonKind::Simple, &collinear),
            Err(PolygonError::CollinearEdges { ring: 0, index: 1 })
        ));
        let clockwise = [(0, 0), (0, 1), (1, 1), (1, 0)];
        assert_eq!(
            Polygon::from_int_ring(PolygonKind::Simple, &clockwise),
            Err(PolygonError::WrongOrientation { ring: 0 })
        );
        let slanted = [(0, 0), (2, 0), (1, 1)];
        assert!(matches!(
            Polygon::from_int_ring(PolygonKind::Orthogonal, &slanted),
            Err(PolygonError::NonAxisEdge { .. })
        ));
        assert!(matches!(
            Polygon::from_int_ring(PolygonKind::Simple, &[(0, 0), (1, 0)]),
            Err(PolygonError::TooFewVertices { .. })
        ));
    }

    #[test]
    fn rejects_hole_outside_and_touching() {
        let outer: Vec<Point> = [(0, 0), (4, 0), (4, 4), (0, 4)]
            .iter()
            .map(|&(x, y)| Point::from_ints(x, y))
            .collect();
        let far: Vec<Point> = [(5, 5), (5, 6), (6, 6), (6, 5)]
            .iter()
            .map(|&(x, y)| Point::from_ints(x, y))
            .collect();
        assert_eq!(
            Polygon::new(PolygonKind::Orthogonal, outer.clone(), vec![far]),
            Err(PolygonError::HoleOutside { hole: 0 })
        );
        let touching: Vec<Point> = [(0, 1), (1, 2), (1, 1)]
            .iter()
            .map(|&(x, y)| Point::from_ints(x, y))
            .collect();
        assert!(matches!(
            Polygon::new(PolygonKind::Simple, outer, vec![touching]),
            Err(PolygonError::SelfIntersection { .. })
        ));
    }
}

use geomgraph::gen::{l_shape, plus_polygon, random_orthogonal_polygon, square_annulus};
use geomgraph::geometry::{Location, Point, Polygon, Segment};
use geomgraph::oracle::max_disjoint_diagonals_bf;
use geomgraph::rational::{int, zero, Rational};
use geomgraph::rect_partition::{
    concave_vertices, good_diagonals, min_rectangle_partition, predicted_count, Rect, RectPartition,
};
use proptest::prelude::*;

/// Union of the collinear pieces of `pieces` covers `[lo, hi]` on the line.
fn interval_covered(lo: &Rational, hi: &Rational, mut pieces: Vec<(Rational, Rational)>) -> bool {
    pieces.sort();
    let mut reach = lo.clone();
    for (a, b) in pieces {
        if a > reach {
            break;
        }
        if b > reach {
            reach = b;
        }
    }
    reach >= *hi
}

fn side_supported(a: &Point, b: &Point, support: &[Segment]) -> bool {
    if a.y == b.y {
        let (lo, hi) = (a.x.clone().min(b.x.clone()), a.x.clone().max(b.x.clone()));
        let pieces = support
            .iter()
            .filter(|s| s.a.y == a.y && s.b.y == a.y)
            .map(|s| (s.a.x.clone().min(s.b.x.clone()), s.a.x.clone().max(s.b.x.clone())))
            .collect();
        interval_covered(&lo, &hi, pieces)
    } else {
        let (lo, hi) = (a.y.clone().min(b.y.clone()), a.y.clone().max(b.y.clone()));
        let pieces = support
            .iter()
            .filter(|s| s.a.x == a.x && s.b.x == a.x)
            .map(|s| (s.a.y.clone().min(s.b.y.clone()), s.a.y.clone().max(s.b.y.clone())))
            .collect();
        interval_covered(&lo, &hi, pieces)
    }
}

fn corners(r: &Rect) -> [Point; 4] {
    [
        Point::new(r.xmin.clone(), r.ymin.clone()),
        Point::new(r.xmax.clone(), r.ymin.clone()),
        Point::new(r.xmax.clone(), r.ymax.clone()),
        Point::new(r.xmin.clone(), r.ymax.clone()),
    ]
}

fn check_partition(poly: &Polygon, part: &RectPartition) {
    let total = part.rectangles.iter().fold(zero(), |acc, r| acc + r.area());
    assert_eq!(total, poly.area());
    let half = Rational::new(1.into(), 2.into());
    for (i, r) in part.rectangles.iter().enumerate() {
        assert!(r.xmin < r.xmax && r.ymin < r.ymax);
        let centre = Point::new((&r.xmin + &r.xmax) * &half, (&r.ymin + &r.ymax) * &half);
        assert_eq!(poly.locate(&centre), Location::Inside);
        for s in &part.rectangles[i + 1..] {
            let overlap = r.xmin < s.xmax && s.xmin < r.xmax && r.ymin < s.ymax && s.ymin < r.ymax;
            assert!(!overlap, "{r:?} overlaps {s:?}");
        }
    }
    let mut support = poly.edge_segments();
    support.extend(part.diagonals.iter().map(|d| d.segment.clone()));
    support.extend(part.cuts.iter().cloned());
    for r in &part.rectangles {
        let c = corners(r);
        for k in 0..4 {
            assert!(
                side_supported(&c[k], &c[(k + 1) % 4], &support),
                "unsupported side of {r:?}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn count_matches_exhaustive_diagonal_search(seed in 0u64..1_000_000, grid in 2i64..=6) {
        let poly = random_orthogonal_polygon(seed, grid, 14);
        let n = poly.vertex_count();
        let h = poly.holes().len();
        prop_assert_eq!(concave_vertices(&poly).len(), n / 2 + 2 * h - 2);
        let ds = good_diagonals(&poly).unwrap();
        let g = max_disjoint_diagonals_bf(&ds);
        let part = min_rectangle_partition(&poly).unwrap();
        prop_assert_eq!(part.diagonals.len(), g);
        prop_assert_eq!(part.rectangles.len(), predicted_count(&poly, g));
        check_partition(&poly, &part);
    }
}

#[test]
fn fixed_shapes() {
    for (poly, rects, diagonals) in [(plus_polygon(), 3, 2), (l_shape(), 2, 0), (square_annulus(), 4, 0)] {
        let part = min_rectangle_partition(&poly).unwrap();
        assert_eq!(part.rectangles.len(), rects);
        assert_eq!(part.diagonals.len(), diagonals);
        check_partition(&poly, &part);
    }
    let square = Polygon::from_int_ring(
        geomgraph::geometry::PolygonKind::Orthogonal,
        &[(0, 0), (3, 0), (3, 2), (0, 2)],
    )
    .unwrap();
    let part = min_rectangle_partition(&square).unwrap();
    assert_eq!(part.rectangles.len(), 1);
    assert_eq!(part.rectangles[0].area(), int(6));
}

#[test]
fn polygons_with_holes_match_the_formula() {
    let mut found = 0;
    for seed in 0..20_000 {
        let poly = random_orthogonal_polygon(seed, 5 + (seed as i64 % 3), 14);
        if poly.holes().is_empty() {
            continue;
        }
        let g = max_disjoint_diagonals_bf(&good_diagonals(&poly).unwrap());
        let part = min_rectangle_partition(&poly).unwrap();
        assert_eq!(part.rectangles.len(), predicted_count(&poly, g), "seed {seed}");
        check_partition(&poly, &part);
        found += 1;
        if found == 40 {
            break;
        }
    }
    assert_eq!(found, 40);
}

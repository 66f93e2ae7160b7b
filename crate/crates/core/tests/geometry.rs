use geomgraph::gen::random_simple_polygon;
use geomgraph::geometry::{
    lune_contains, segments_intersect, triangle_area, triangulate, LunePosition, Point, Segment, SegmentIntersection,
};
use geomgraph::rational::zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn triangulation_counts_and_area(seed in 0u64..10_000, n in 3usize..40) {
        let poly = random_simple_polygon(seed, n, 30);
        let t = triangulate(&poly).unwrap();
        prop_assert_eq!(t.triangles.len(), n - 2);
        let total = t.triangles.iter().fold(zero(), |acc, f| {
            acc + triangle_area(poly.vertex(f[0]), poly.vertex(f[1]), poly.vertex(f[2]))
        });
        prop_assert_eq!(total, poly.area());
        prop_assert!(t.dual_is_tree());
    }

    #[test]
    fn lune_sides_swap_with_endpoints(
        p in (-9i64..9, -9i64..9),
        q in (-9i64..9, -9i64..9),
        x in (-9i64..9, -9i64..9),
    ) {
        let (p, q, x) = (Point::from_ints(p.0, p.1), Point::from_ints(q.0, q.1), Point::from_ints(x.0, x.1));
        let swapped = match lune_contains(&q, &p, &x) {
            LunePosition::SideA => LunePosition::SideB,
            LunePosition::SideB => LunePosition::SideA,
            other => other,
        };
        prop_assert_eq!(lune_contains(&p, &q, &x), swapped);
    }
}

fn float_orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Where every orientation is far from zero in floating point, the exact
/// answer must agree with the plain sign test.
#[test]
fn segment_predicate_agrees_with_float_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e6);
    let mut certain = 0;
    for _ in 0..100_000 {
        let mut pt = || (rng.gen_range(-50i64..=50), rng.gen_range(-50i64..=50));
        let (a, b, c, d) = (pt(), pt(), pt(), pt());
        if a == b || c == d {
            continue;
        }
        let s1 = Segment::new(Point::from_ints(a.0, a.1), Point::from_ints(b.0, b.1));
        let s2 = Segment::new(Point::from_ints(c.0, c.1), Point::from_ints(d.0, d.1));
        let exact = segments_intersect(&s1, &s2);
        let back = segments_intersect(&s2, &s1);
        assert_eq!(
            exact == SegmentIntersection::Disjoint,
            back == SegmentIntersection::Disjoint,
            "symmetry"
        );
        if let (SegmentIntersection::Crossing(x), SegmentIntersection::Crossing(y)) = (&exact, &back) {
            assert_eq!(x, y);
        }
        let f = |p: (i64, i64)| (p.0 as f64, p.1 as f64);
        let o = [
            float_orient(f(a), f(b), f(c)),
            float_orient(f(a), f(b), f(d)),
            float_orient(f(c), f(d), f(a)),
            float_orient(f(c), f(d), f(b)),
        ];
        if o.iter().any(|v| v.abs() < 1e-6) {
            continue;
        }
        certain += 1;
        let crossing = o[0].signum() != o[1].signum() && o[2].signum() != o[3].signum();
        assert_eq!(matches!(exact, SegmentIntersection::Crossing(_)), crossing);
        assert_eq!(exact == SegmentIntersection::Disjoint, !crossing);
    }
    assert!(certain > 90_000, "filter was certain on only {certain} pairs");
}

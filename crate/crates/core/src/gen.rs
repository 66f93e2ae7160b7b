//! Seeded instance families shared by tests, the acceptance suite and the
//! command-line `gen` subcommand.

use crate::bend_min::{MapFile, PlaneMap};
use crate::geometry::{cross, Point, Polygon, PolygonKind};
use crate::rect_partition::concave_vertices;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

fn ring(points: &[(i64, i64)]) -> Vec<Point> {
    points.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
}

fn index_of(poly: &Polygon) -> HashMap<Point, usize> {
    poly.vertices().into_iter().enumerate().map(|(i, p)| (p, i)).collect()
}

fn quads_by_point(poly: &Polygon, quads: &[[(i64, i64); 4]]) -> Vec<[usize; 4]> {
    let idx = index_of(poly);
    quads
        .iter()
        .map(|q| q.map(|(x, y)| idx[&Point::from_ints(x, y)]))
        .collect()
}

/// Simple comb with `k ≥ 2` triangular prongs and `3k` vertices; every
/// prong tip needs its own guard.
pub fn comb(k: usize) -> Polygon {
    assert!(k >= 2);
    let k = k as i64;
    let mut pts = vec![(0, 0), (4 * k - 2, 0)];
    for i in (0..k).rev() {
        let right = if i == k - 1 { None } else { Some((4 * i + 2, 1)) };
        let left = if i == 0 { None } else { Some((4 * i, 1)) };
        pts.extend(right);
        pts.push((4 * i + 1, 10));
        pts.extend(left);
    }
    Polygon::from_int_ring(PolygonKind::Simple, &pts).expect("comb is simple")
}

/// Orthogonal comb with `k ≥ 2` teeth, `4k` vertices and a convex
/// quadrilateralization of `2k − 1` quads. Gap floors descend to the right
/// so that every quad is strictly convex.
pub fn orthogonal_comb(k: usize) -> (Polygon, Vec<[usize; 4]>) {
    assert!(k >= 2);
    let k = k as i64;
    let top = 4 * k;
    let floor = |j: i64| k - 1 - j;
    let width = 3 * k - 2;
    let mut pts = vec![
        (0, 0),
        (width, 0),
        (width, top),
        (width - 1, top),
        (width - 1, floor(k - 2)),
    ];
    for j in (0..k - 1).rev() {
        pts.push((3 * j + 1, floor(j)));
        pts.push((3 * j + 1, top));
        pts.push((3 * j, top));
        if j >= 1 {
            pts.push((3 * j, floor(j - 1)));
        }
    }
    let poly = Polygon::from_int_ring(PolygonKind::Orthogonal, &pts).expect("orthogonal comb");
    let mut quads = vec![
        [(0, 0), (1, floor(0)), (1, top), (0, top)],
        [(width - 1, floor(k - 2)), (width, 0), (width, top), (width - 1, top)],
    ];
    for i in 1..k - 1 {
        quads.push([
            (3 * i, floor(i - 1)),
            (3 * i + 1, floor(i)),
            (3 * i + 1, top),
            (3 * i, top),
        ]);
    }
    for j in 0..k - 1 {
        let p = if j == k - 2 {
            (width, 0)
        } else {
            (3 * j + 4, floor(j + 1))
        };
        quads.push([(0, 0), p, (3 * j + 3, floor(j)), (3 * j + 1, floor(j))]);
    }
    let q = quads_by_point(&poly, &quads);
    (poly, q)
}

/// Orthogonal staircase with `s ≥ 1` steps, `2s + 2` vertices and a fan
/// of `s` quads from the origin.
pub fn staircase(s: usize) -> (Polygon, Vec<[usize; 4]>) {
    assert!(s >= 1);
    let s = s as i64;
    let mut pts = vec![(0, 0), (s, 0)];
    for t in 1..=s {
        pts.push((s - t + 1, t));
        pts.push((s - t, t));
    }
    let poly = Polygon::from_int_ring(PolygonKind::Orthogonal, &pts).expect("staircase");
    let quads: Vec<[(i64, i64); 4]> = (1..=s)
        .map(|t| [(0, 0), (s - t + 1, t - 1), (s - t + 1, t), (s - t, t)])
        .collect();
    let q = quads_by_point(&poly, &quads);
    (poly, q)
}

pub fn plus_polygon() -> Polygon {
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
    .expect("plus")
}

pub fn l_shape() -> Polygon {
    Polygon::from_int_ring(
        PolygonKind::Orthogonal,
        &[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
    )
    .expect("L")
}

/// 6 × 6 square around a 2 × 2 hole.
pub fn square_annulus() -> Polygon {
    Polygon::new(
        PolygonKind::Orthogonal,
        ring(&[(0, 0), (6, 0), (6, 6), (0, 6)]),
        vec![ring(&[(2, 2), (2, 4), (4, 4), (4, 2)])],
    )
    .expect("annulus")
}

/// Angular order around the origin, starting from the positive x-axis.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| {
        let zero = crate::rational::zero();
        if p.y > zero || (p.y == zero && p.x > zero) {
            0
        } else {
            1
        }
    };
    let o = Point::from_ints(0, 0);
    half(a)
        .cmp(&half(b))
        .then_with(|| crate::rational::zero().cmp(&cross(&o, a, b)))
}

/// Star-shaped simple polygon with `n ≥ 3` integer vertices in
/// `[-r, r]²`, visible from the origin.
pub fn random_simple_polygon(seed: u64, n: usize, r: i64) -> Polygon {
    assert!(n >= 3 && r >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = Point::from_ints(0, 0);
    loop {
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = Point::from_ints(rng.gen_range(-r..=r), rng.gen_range(-r..=r));
            if p != o {
                pts.push(p);
            }
        }
        pts.sort_by(angle_cmp);
        let ok = (0..n).all(|i| cross(&o, &pts[i], &pts[(i + 1) % n]) > crate::rational::zero());
        if !ok {
            continue;
        }
        if let Ok(poly) = Polygon::simple(pts) {
            return poly;
        }
    }
}

/// Boundary rings of a 4-connected polyomino with no diagonal pinch,
/// interior on the left, collinear points merged.
fn polyomino_rings(cells: &BTreeSet<(i64, i64)>) -> Vec<Vec<(i64, i64)>> {
    let filled = |x: i64, y: i64| cells.contains(&(x, y));
    let mut next: HashMap<(i64, i64), (i64, i64)> = HashMap::new();
    for &(x, y) in cells {
        if !filled(x, y - 1) {
            next.insert((x, y), (x + 1, y));
        }
        if !filled(x + 1, y) {
            next.insert((x + 1, y), (x + 1, y + 1));
        }
        if !filled(x, y + 1) {
            next.insert((x + 1, y + 1), (x, y + 1));
        }
        if !filled(x - 1, y) {
            next.insert((x, y + 1), (x, y));
        }
    }
    let mut starts: Vec<(i64, i64)> = next.keys().copied().collect();
    starts.sort_unstable();
    let mut used = BTreeSet::new();
    let mut rings = Vec::new();
    for s in starts {
        if used.contains(&s) {
            continue;
        }
        let mut walk = vec![s];
        used.insert(s);
        let mut cur = next[&s];
        while cur != s {
            used.insert(cur);
            walk.push(cur);
            cur = next[&cur];
        }
        let m = walk.len();
        let corners: Vec<(i64, i64)> = (0..m)
            .filter(|&i| {
                let (a, b, c) = (walk[(i + m - 1) % m], walk[i], walk[(i + 1) % m]);
                (b.0 - a.0, b.1 - a.1) != (c.0 - b.0, c.1 - b.1)
            })
            .map(|i| walk[i])
            .collect();
        rings.push(corners);
    }
    rings
}

fn twice_area(r: &[(i64, i64)]) -> i64 {
    (0..r.len())
        .map(|i| {
            let (a, b) = (r[i], r[(i + 1) % r.len()]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum()
}

fn has_pinch(cells: &BTreeSet<(i64, i64)>) -> bool {
    cells.iter().any(|&(x, y)| {
        let f = |dx: i64, dy: i64| cells.contains(&(x + dx, y + dy));
        (f(1, 1) && !f(1, 0) && !f(0, 1)) || (f(-1, 1) && !f(-1, 0) && !f(0, 1))
    })
}

/// Random orthogonal polygon, possibly with holes, grown cell by cell in
/// a `grid × grid` box; at most `max_concave` concave vertices.
pub fn random_orthogonal_polygon(seed: u64, grid: i64, max_concave: usize) -> Polygon {
    assert!(grid >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let target = rng.gen_range(1..=(grid * grid * 2 / 3).max(1)) as usize;
        let mut cells = BTreeSet::new();
        cells.insert((rng.gen_range(0..grid), rng.gen_range(0..grid)));
        while cells.len() < target {
            let frontier: Vec<(i64, i64)> = cells
                .iter()
                .flat_map(|&(x, y)| [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)])
                .filter(|&(x, y)| (0..grid).contains(&x) && (0..grid).contains(&y) && !cells.contains(&(x, y)))
                .collect();
            match frontier.choose(&mut rng) {
                Some(&c) => {
                    cells.insert(c);
                }
                None => break,
            }
        }
        if has_pinch(&cells) {
            continue;
        }
        let mut rings = polyomino_rings(&cells);
        rings.sort_by_key(|r| std::cmp::Reverse(twice_area(r)));
        let outer = ring(&rings[0]);
        let holes = rings[1..].iter().map(|r| ring(r)).collect();
        let poly = Polygon::new(PolygonKind::Orthogonal, outer, holes).expect("polyomino boundary is valid");
        if concave_vertices(&poly).len() <= max_concave {
            return poly;
        }
    }
}

/// `n` integer points in `[0, range]²`, repeats allowed.
pub fn random_points(seed: u64, n: usize, range: i64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Point::from_ints(rng.gen_range(0..=range), rng.gen_range(0..=range)))
        .collect()
}

/// Brick wall of `rows` rows in a `width`-wide strip, each row split at
/// random cut positions, inside an exterior region. At most `max_bricks`
/// bricks; junctions read off lattice points counterclockwise.
pub fn brick_map(seed: u64, width: i64, rows: i64, max_bricks: usize) -> PlaneMap {
    assert!(width >= 2 && rows >= 1 && max_bricks as i64 >= rows);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cuts: Vec<Vec<i64>> = loop {
        let c: Vec<Vec<i64>> = (0..rows)
            .map(|_| (1..width).filter(|_| rng.gen_bool(0.4)).collect())
            .collect();
        if c.iter().map(|r| r.len() + 1).sum::<usize>() <= max_bricks {
            break c;
        }
    };
    let mut first = Vec::with_capacity(rows as usize);
    let mut count = 0;
    for r in &cuts {
        first.push(count);
        count += r.len() + 1;
    }
    let exterior = count;
    let region = |x: i64, y: i64| -> usize {
        if x < 0 || y < 0 || x >= width || y >= rows {
            exterior
        } else {
            first[y as usize] + cuts[y as usize].iter().filter(|&&c| c <= x).count()
        }
    };
    let mut junctions = Vec::new();
    for y in 0..=rows {
        for x in 0..=width {
            let quad = [region(x, y), region(x - 1, y), region(x - 1, y - 1), region(x, y - 1)];
            let rot: Vec<usize> = (0..4)
                .filter(|&i| quad[i] != quad[(i + 3) % 4])
                .map(|i| quad[i])
                .collect();
            if rot.len() >= 3 {
                junctions.push(rot);
            }
        }
    }
    let mut adjacent = BTreeSet::new();
    for y in -1..=rows {
        for x in -1..=width {
            for (a, b) in [(region(x, y), region(x + 1, y)), (region(x, y), region(x, y + 1))] {
                if a != b {
                    adjacent.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    let mut names: Vec<String> = (0..count).map(|b| format!("b{b}")).collect();
    names.push("outside".into());
    let name = |r: usize| names[r].clone();
    PlaneMap::new(&MapFile {
        regions: names.clone(),
        exterior: name(exterior),
        junctions: junctions.iter().map(|j| j.iter().map(|&r| name(r)).collect()).collect(),
        adjacencies: adjacent.iter().map(|&(a, b)| (name(a), name(b))).collect(),
    })
    .expect("brick walls are valid maps")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::art_gallery::{fisk_guards, orthogonal_guards, verify_guard_certificate, Quadrilateralization};

    #[test]
    fn combs_are_extremal() {
        for k in 2..=10 {
            let c = comb(k);
            assert_eq!(c.vertex_count(), 3 * k);
            let cert = fisk_guards(&c).unwrap();
            assert!(verify_guard_certificate(&cert));
            assert_eq!(cert.guards.len(), k);
            let (o, q) = orthogonal_comb(k);
            assert_eq!(o.vertex_count(), 4 * k);
            let q = Quadrilateralization::new(&o, q).unwrap();
            let cert = orthogonal_guards(&o, &q).unwrap();
            assert!(verify_guard_certificate(&cert));
            assert_eq!(cert.guards.len(), k);
        }
    }

    #[test]
    fn staircases_quadrilateralize() {
        for s in 1..8 {
            let (p, q) = staircase(s);
            assert_eq!(p.vertex_count(), 2 * s + 2);
            let q = Quadrilateralization::new(&p, q).unwrap();
            assert_eq!(q.quads.len(), s);
        }
    }

    #[test]
    fn random_families_validate() {
        for seed in 0..30 {
            let p = random_simple_polygon(seed, 3 + (seed as usize % 20), 12);
            assert_eq!(p.vertex_count(), 3 + seed as usize % 20);
            let o = random_orthogonal_polygon(seed, 5, 14);
            assert!(concave_vertices(&o).len() <= 14);
            assert!(o.area().is_integer());
        }
        assert_eq!(random_points(3, 7, 5), random_points(3, 7, 5));
    }

    #[test]
    fn brick_maps_validate() {
        for seed in 0..40 {
            let m = brick_map(seed, 4, 1 + seed as i64 % 3, 5);
            assert!(m.regions.len() <= 6);
            assert_eq!(m.exterior, m.regions.len() - 1);
        }
        let m = brick_map(0, 2, 1, 1);
        assert_eq!(m.regions.len(), 2);
        assert!(m.junctions.is_empty());
    }

    #[test]
    fn polyomino_holes_are_found() {
        let cells: BTreeSet<(i64, i64)> = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .filter(|&c| c != (1, 1))
            .collect();
        let rings = polyomino_rings(&cells);
        assert_eq!(rings.len(), 2);
        let areas: BTreeSet<i64> = rings.iter().map(|r| twice_area(r)).collect();
        assert_eq!(areas, BTreeSet::from([-2, 18]));
    }
}

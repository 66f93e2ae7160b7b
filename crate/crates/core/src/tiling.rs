//! Maximizing the smallest angle of a tiling by centrally symmetric
//! polygons, keeping its combinatorics, by rotating whole zones.

use crate::graph::{bellman_ford, find_negative_cycle, ShortestPaths};
use crate::parametric::{karp_orlin_threshold, KarpOrlinError, ParamDigraph, Threshold};
use crate::rational::{self, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub zone: usize,
    /// `1` along the zone direction, `-1` against it.
    pub sign: i8,
    /// Shared by the two tiles on either side of an interior side.
    pub id: String,
}

/// Sides in counterclockwise order.
pub type Tile = Vec<Side>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingFile {
    /// Zone directions in degrees, as numbers or `"p/q"` strings.
    pub directions: Vec<serde_json::Value>,
    pub tiles: Vec<Tile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("tiling has no tiles")]
    Empty,
    #[error("direction {0} is not a rational number")]
    BadDirection(usize),
    #[error("tile {0} needs an even number of at least four sides")]
    BadSideCount(usize),
    #[error("tile {tile} side {side} names an unknown zone or sign")]
    BadSide { tile: usize, side: usize },
    #[error("tile {tile}: side {side} is not the reverse of its opposite side")]
    NotCentrallySymmetric { tile: usize, side: usize },
    #[error("tile {0} uses a zone on two non-opposite sides")]
    RepeatedZone(usize),
    #[error("side {0:?} appears on more than two tiles")]
    SideOverused(String),
    #[error("tile {tile}: shared side {id:?} disagrees in zone or direction")]
    SharedSideMismatch { tile: usize, id: String },
    #[error("zone {0} is split into separate classes")]
    SplitZone(usize),
    #[error("zone {0} labels no side")]
    UnusedZone(usize),
    #[error("tiles are not connected through shared sides")]
    Disconnected,
    #[error("tile {tile} corner {corner} is not a convex angle")]
    NotConvex { tile: usize, corner: usize },
    #[error("angle graph has no cycle through a min-angle arc")]
    Unconstrained,
    #[error(transparent)]
    KarpOrlin(#[from] KarpOrlinError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub directions: Vec<Rational>,
    pub tiles: Vec<Tile>,
}

impl Tiling {
    pub fn new(directions: Vec<Rational>, tiles: Vec<Tile>) -> Result<Self, TilingError> {
        if tiles.is_empty() {
            return Err(TilingError::Empty);
        }
        for (t, tile) in tiles.iter().enumerate() {
            if tile.len() < 4 || tile.len() % 2 != 0 {
                return Err(TilingError::BadSideCount(t));
            }
            for (i, s) in tile.iter().enumerate() {
                if s.zone >= directions.len() || (s.sign != 1 && s.sign != -1) {
                    return Err(TilingError::BadSide { tile: t, side: i });
                }
            }
        }
        Ok(Tiling { directions, tiles })
    }

    pub fn from_file(f: &TilingFile) -> Result<Self, TilingError> {
        let directions = f
            .directions
            .iter()
            .enumerate()
            .map(|(i, v)| rational::from_json(v).map_err(|_| TilingError::BadDirection(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Tiling::new(directions, f.tiles.clone())
    }

    pub fn to_file(&self) -> TilingFile {
        TilingFile {
            directions: self.directions.iter().map(rational::to_json).collect(),
            tiles: self.tiles.clone(),
        }
    }

    pub fn zone_count(&self) -> usize {
        self.directions.len()
    }

    /// Direction of side `s` under zone directions `theta`, in `[0, 360)`.
    fn side_direction(theta: &[Rational], s: &Side) -> Rational {
        let d = if s.sign > 0 {
            theta[s.zone].clone()
        } else {
            &theta[s.zone] + rational::int(180)
        };
        normalize_degrees(d)
    }

    /// Interior angle at the corner after side `c` of tile `t`.
    pub fn interior_angle(&self, theta: &[Rational], t: usize, c: usize) -> Rational {
        let tile = &self.tiles[t];
        let a = Tiling::side_direction(theta, &tile[c]);
        let b = Tiling::side_direction(theta, &tile[(c + 1) % tile.len()]);
        rational::int(180) - normalize_degrees(b - a)
    }

    /// Smallest interior tile angle under `theta`.
    pub fn min_angle(&self, theta: &[Rational]) -> Rational {
        (0..self.tiles.len())
            .flat_map(|t| (0..self.tiles[t].len()).map(move |c| (t, c)))
            .map(|(t, c)| self.interior_angle(theta, t, c))
            .min()
            .expect("tiles are nonempty")
    }
}

fn normalize_degrees(mut d: Rational) -> Rational {
    let full = rational::int(360);
    while d < rational::zero() {
        d += &full;
    }
    while d >= full {
        d -= &full;
    }
    d
}

/// Sides grouped into classes that must stay parallel and equally long.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoneReport {
    pub zone_count: usize,
    /// `(tile, side)` members per zone label.
    pub classes: Vec<Vec<(usize, usize)>>,
}

/// Checks that zone labels are exactly the classes generated by opposite
/// sides of a tile and shared sides of neighbouring tiles.
pub fn zones(t: &Tiling) -> Result<ZoneReport, TilingError> {
    let mut owners: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
    for (ti, tile) in t.tiles.iter().enumerate() {
        let k = tile.len() / 2;
        for i in 0..k {
            let (s, o) = (&tile[i], &tile[i + k]);
            if s.zone != o.zone || s.sign != -o.sign {
                return Err(TilingError::NotCentrallySymmetric { tile: ti, side: i + k });
            }
            if tile[..i].iter().any(|x| x.zone == s.zone) {
                return Err(TilingError::RepeatedZone(ti));
            }
        }
        for (i, s) in tile.iter().enumerate() {
            owners.entry(s.id.as_str()).or_default().push((ti, i));
        }
    }
    let total: usize = t.tiles.iter().map(|x| x.len()).sum();
    let index: Vec<(usize, usize)> = (0..t.tiles.len())
        .flat_map(|ti| (0..t.tiles[ti].len()).map(move |i| (ti, i)))
        .collect();
    let flat = |ti: usize, i: usize| index.binary_search(&(ti, i)).expect("indexed");
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    };
    for (ti, tile) in t.tiles.iter().enumerate() {
        let k = tile.len() / 2;
        for i in 0..k {
            union(flat(ti, i), flat(ti, i + k));
        }
    }
    let mut tile_adj: Vec<Vec<usize>> = vec![Vec::new(); t.tiles.len()];
    for (id, occ) in &owners {
        match occ.as_slice() {
            [_] => {}
            [(ta, ia), (tb, ib)] => {
                let (sa, sb) = (&t.tiles[*ta][*ia], &t.tiles[*tb][*ib]);
                if sa.zone != sb.zone || sa.sign != -sb.sign {
                    return Err(TilingError::SharedSideMismatch {
                        tile: *tb,
                        id: id.to_string(),
                    });
                }
                union(flat(*ta, *ia), flat(*tb, *ib));
                tile_adj[*ta].push(*tb);
                tile_adj[*tb].push(*ta);
            }
            _ => return Err(TilingError::SideOverused(id.to_string())),
        }
    }
    let mut root_of_zone: Vec<Option<usize>> = vec![None; t.zone_count()];
    let mut classes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t.zone_count()];
    for &(ti, i) in &index {
        let z = t.tiles[ti][i].zone;
        let r = find(&mut parent, flat(ti, i));
        match root_of_zone[z] {
            None => root_of_zone[z] = Some(r),
            Some(r0) if r0 != r => return Err(TilingError::SplitZone(z)),
            _ => {}
        }
        classes[z].push((ti, i));
    }
    if let Some(z) = classes.iter().position(|c| c.is_empty()) {
        return Err(TilingError::UnusedZone(z));
    }
    let mut seen = vec![false; t.tiles.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &tile_adj[x] {
            if !std::mem::replace(&mut seen[y], true) {
                queue.push_back(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(TilingError::Disconnected);
    }
    Ok(ZoneReport {
        zone_count: t.zone_count(),
        classes,
    })
}

/// Initial tiles must be strictly convex and wind once.
fn check_convex(t: &Tiling) -> Result<(), TilingError> {
    for (ti, tile) in t.tiles.iter().enumerate() {
        let mut turns = rational::zero();
        for c in 0..tile.len() {
            let a = t.interior_angle(&t.directions, ti, c);
            if a <= rational::zero() || a >= rational::int(180) {
                return Err(TilingError::NotConvex { tile: ti, corner: c });
            }
            turns += rational::int(180) - a;
        }
        if turns != rational::int(360) {
            return Err(TilingError::NotConvex { tile: ti, corner: 0 });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleArcKind {
    Start,
    MinAngle { tile: usize, corner: usize },
    Convexity { tile: usize, corner: usize },
}

/// Zone vertices `0..z`, start vertex `z`. A corner between zones `i` and
/// `j` with angle `A` gives `i → j: A − λ` and `j → i: 180 − A`.
pub fn angle_graph(t: &Tiling) -> (ParamDigraph, Vec<AngleArcKind>) {
    let z = t.zone_count();
    let mut g = ParamDigraph::new(z + 1);
    let mut kinds = Vec::new();
    for v in 0..z {
        g.add_arc(z, v, rational::zero(), rational::zero());
        kinds.push(AngleArcKind::Start);
    }
    for (ti, tile) in t.tiles.iter().enumerate() {
        for c in 0..tile.len() {
            let i = tile[c].zone;
            let j = tile[(c + 1) % tile.len()].zone;
            let a = t.interior_angle(&t.directions, ti, c);
            g.add_arc(i, j, a.clone(), -rational::one());
            kinds.push(AngleArcKind::MinAngle { tile: ti, corner: c });
            g.add_arc(j, i, rational::int(180) - a, rational::zero());
            kinds.push(AngleArcKind::Convexity { tile: ti, corner: c });
        }
    }
    (g, kinds)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleSolution {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub lambda: Rational,
    #[serde(serialize_with = "crate::rational::serialize_vec")]
    pub adjustments: Vec<Rational>,
    #[serde(serialize_with = "crate::rational::serialize_vec")]
    pub directions: Vec<Rational>,
    /// Angle-graph arcs of a cycle that is tight at `lambda`.
    pub witness: Vec<usize>,
    /// Tile corners, floating point, for drawing only.
    pub coordinates: Vec<Vec<(f64, f64)>>,
}

pub fn optimize_angles(t: &Tiling) -> Result<AngleSolution, TilingError> {
    zones(t)?;
    check_convex(t)?;
    let (g, _) = angle_graph(t);
    let (lambda, witness) = match karp_orlin_threshold(&g)? {
        Threshold::Unbounded => return Err(TilingError::Unconstrained),
        Threshold::Finite { lambda, witness } => (lambda, witness),
    };
    let z = t.zone_count();
    let dist = match bellman_ford(&g.at(&lambda), z) {
        ShortestPaths::Distances(d) => d,
        ShortestPaths::NegativeCycle(_) => unreachable!("λ* admits no negative cycle"),
    };
    let adjustments: Vec<Rational> = dist[..z]
        .iter()
        .map(|d| d.clone().expect("start reaches every zone"))
        .collect();
    let directions: Vec<Rational> = t.directions.iter().zip(&adjustments).map(|(a, b)| a + b).collect();
    debug_assert_eq!(t.min_angle(&directions), lambda);
    let coordinates = reconstruct(t, &directions);
    Ok(AngleSolution {
        lambda,
        adjustments,
        directions,
        witness,
        coordinates,
    })
}

/// A negative cycle of the angle graph at `lambda`, if any.
pub fn negative_cycle_at(t: &Tiling, lambda: &Rational) -> Option<Vec<usize>> {
    let (g, _) = angle_graph(t);
    find_negative_cycle(&g.at(lambda)).map(|c| c.arcs)
}

fn unit(theta: &Rational, sign: i8) -> (f64, f64) {
    let r = rational::to_f64(theta).to_radians();
    let s = f64::from(sign);
    (s * r.cos(), s * r.sin())
}

/// Tile corners from unit side vectors, laid out breadth-first from tile 0
/// whose first corner sits at the origin.
pub fn reconstruct(t: &Tiling, theta: &[Rational]) -> Vec<Vec<(f64, f64)>> {
    let corners_from = |ti: usize, side: usize, at: (f64, f64)| -> Vec<(f64, f64)> {
        let tile = &t.tiles[ti];
        let n = tile.len();
        let mut out = vec![(0.0, 0.0); n];
        out[side] = at;
        for step in 0..n - 1 {
            let c = (side + step) % n;
            let (dx, dy) = unit(&theta[tile[c].zone], tile[c].sign);
            let p = out[c];
            out[(c + 1) % n] = (p.0 + dx, p.1 + dy);
        }
        let last = (side + n - 1) % n;
        let (dx, dy) = unit(&theta[tile[last].zone], tile[last].sign);
        let p = out[last];
        let gap = ((p.0 + dx - at.0).powi(2) + (p.1 + dy - at.1).powi(2)).sqrt();
        assert!(gap < 1e-9, "tile {ti} fails to close by {gap}");
        out
    };
    let mut owners: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
    for (ti, tile) in t.tiles.iter().enumerate() {
        for (i, s) in tile.iter().enumerate() {
            owners.entry(s.id.as_str()).or_default().push((ti, i));
        }
    }
    let mut placed: Vec<Option<Vec<(f64, f64)>>> = vec![None; t.tiles.len()];
    placed[0] = Some(corners_from(0, 0, (0.0, 0.0)));
    let mut queue = VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        let corners = placed[a].clone().expect("placed");
        let n = t.tiles[a].len();
        for (i, s) in t.tiles[a].iter().enumerate() {
            for &(b, j) in &owners[s.id.as_str()] {
                if b != a && placed[b].is_none() {
                    // The shared side runs backwards in the neighbour.
                    placed[b] = Some(corners_from(b, j, corners[(i + 1) % n]));
                    queue.push_back(b);
                }
            }
        }
    }
    placed.into_iter().map(|p| p.unwrap_or_default()).collect()
}

fn rhombus(base: u64, a: usize, z: usize) -> Tile {
    let id = |set: u64, zone: usize| format!("{set}:{zone}");
    vec![
        Side {
            zone: a,
            sign: 1,
            id: id(base, a),
        },
        Side {
            zone: z,
            sign: 1,
            id: id(base | 1 << a, z),
        },
        Side {
            zone: a,
            sign: -1,
            id: id(base | 1 << z, a),
        },
        Side {
            zone: z,
            sign: -1,
            id: id(base, z),
        },
    ]
}

/// One rhombus with zone directions `θ₀` and `θ₁`.
pub fn single_rhombus(theta0: Rational, theta1: Rational) -> Tiling {
    Tiling::new(vec![theta0, theta1], vec![rhombus(0, 0, 1)]).expect("valid tiling")
}

/// Rhombic tiling from a wiring diagram: each swap of adjacent wires `a < z`
/// at position `p`, whose left neighbours form the set `B`, places the rhombus `(B, a, z)`.
pub fn wiring_tiling(directions: Vec<Rational>, swaps: &[usize]) -> Tiling {
    let mut chain: Vec<usize> = (0..directions.len()).collect();
    let mut out = Vec::new();
    for &pos in swaps {
        let (a, z) = (chain[pos], chain[pos + 1]);
        assert!(a < z, "each pair of wires crosses at most once");
        let base = chain[..pos].iter().fold(0u64, |s, &w| s | 1 << w);
        out.push(rhombus(base, a, z));
        chain.swap(pos, pos + 1);
    }
    Tiling::new(directions, out).expect("valid tiling")
}

/// Seeded random connected rhombic tiling from a wiring diagram on
/// `k ≤ 6` wires with `swaps` crossings, clamped to `k−1..=k(k−1)/2`.
pub fn random_tiling(seed: u64, k: usize, swaps: usize) -> Tiling {
    assert!((2..=6).contains(&k));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = k * (k - 1) / 2;
    let swaps = swaps.clamp(k - 1, full);
    loop {
        let mut chain: Vec<usize> = (0..k).collect();
        let mut word = Vec::new();
        while word.len() < swaps {
            let open: Vec<usize> = (0..k - 1).filter(|&p| chain[p] < chain[p + 1]).collect();
            let &p = open.choose(&mut rng).expect("not yet reversed");
            chain.swap(p, p + 1);
            word.push(p);
        }
        let step = 180 / k as i64;
        let directions = (0..k as i64)
            .map(|i| rational::int(i * step + rng.gen_range(0..step.max(2) / 2)))
            .collect();
        let t = wiring_tiling(directions, &word);
        if zones(&t).is_ok() {
            return t;
        }
    }
}

/// A single hexagon with three zones.
pub fn single_hexagon(theta: [i64; 3]) -> Tiling {
    let side = |zone: usize, sign: i8, id: &str| Side {
        zone,
        sign,
        id: id.to_string(),
    };
    Tiling::new(
        theta.iter().map(|&d| rational::int(d)).collect(),
        vec![vec![
            side(0, 1, "a"),
            side(1, 1, "b"),
            side(2, 1, "c"),
            side(0, -1, "d"),
            side(1, -1, "e"),
            side(2, -1, "f"),
        ]],
    )
    .expect("valid tiling")
}

/// Three rhombi around a hexagon.
pub fn three_rhombi() -> Tiling {
    wiring_tiling(
        vec![rational::int(0), rational::int(60), rational::int(120)],
        &[0, 1, 0],
    )
}

//! Exhaustive reference solvers. Each is exponential and guards its input
//! size; none shares code with the fast path it checks beyond the input
//! types.

use crate::bend_min::PlaneMap;
use crate::geometry::{segments_intersect, Point, SegmentIntersection};
use crate::graph::{bellman_ford, BipartiteGraph, ShortestPaths, WeightedDigraph};
use crate::parametric::{LinearFn, ParamDigraph};
use crate::rational::{self, Rational};
use crate::rect_partition::GoodDiagonal;
use crate::star::DistanceMatrix;
use num::{Signed, Zero};
use std::collections::{BTreeMap, HashMap, VecDeque};

pub const MAX_MIS_VERTICES: usize = 20;
pub const MAX_MATCHING_VERTICES: usize = 16;
pub const MAX_CLUSTER_POINTS: usize = 16;
pub const MAX_DIAGONALS: usize = 24;
pub const MAX_CYCLE_VERTICES: usize = 12;
pub const MAX_BEND_JUNCTIONS: usize = 12;
pub const MAX_STAR_CYCLE_POINTS: usize = 5;

/// Largest independent set of a bipartite graph by subset enumeration.
pub fn max_independent_set_bf(g: &BipartiteGraph) -> usize {
    let (l, r) = (g.left_count(), g.right_count());
    let n = l + r;
    assert!(n <= MAX_MIS_VERTICES, "oracle bound");
    let edges: Vec<u32> = g.edges().iter().map(|&(a, b)| (1 << a) | (1 << (l + b))).collect();
    (0u32..1 << n)
        .filter(|&s| edges.iter().all(|&e| s & e != e))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Maximum matching size of a general graph by branching on the lowest
/// free vertex.
pub fn max_matching_bf(n: usize, edges: &[(usize, usize)]) -> usize {
    assert!(n <= MAX_MATCHING_VERTICES, "oracle bound");
    let mut adj = vec![0u32; n];
    for &(a, b) in edges {
        if a != b {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    fn go(free: u32, adj: &[u32], memo: &mut HashMap<u32, usize>) -> usize {
        if free == 0 {
            return 0;
        }
        if let Some(&x) = memo.get(&free) {
            return x;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = go(rest, adj, memo);
        let mut nb = adj[v] & rest;
        while nb != 0 {
            let u = nb.trailing_zeros();
            nb &= nb - 1;
            best = best.max(1 + go(rest & !(1 << u), adj, memo));
        }
        memo.insert(free, best);
        best
    }
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    go(all, &adj, &mut HashMap::new())
}

pub fn has_perfect_matching_bf(n: usize, edges: &[(usize, usize)]) -> bool {
    n % 2 == 0 && max_matching_bf(n, edges) == n / 2
}

/// Weights of all simple cycles, after keeping only the cheapest of any
/// parallel arcs with equal slope (which never changes the feasible set).
pub fn simple_cycle_weights(g: &ParamDigraph) -> Vec<LinearFn> {
    let n = g.vertex_count;
    assert!(n <= MAX_CYCLE_VERTICES, "oracle bound");
    let mut best: BTreeMap<(usize, usize, Rational), Rational> = BTreeMap::new();
    for a in &g.arcs {
        let key = (a.tail, a.head, a.weight.slope.clone());
        match best.get_mut(&key) {
            Some(c) if *c <= a.weight.intercept => {}
            Some(c) => *c = a.weight.intercept.clone(),
            None => {
                best.insert(key, a.weight.intercept.clone());
            }
        }
    }
    let mut out_arcs: Vec<Vec<(usize, LinearFn)>> = vec![Vec::new(); n];
    for ((t, h, slope), intercept) in best {
        out_arcs[t].push((h, LinearFn::new(intercept, slope)));
    }
    let mut cycles = Vec::new();
    let mut on_path = vec![false; n];
    fn dfs(
        s: usize,
        v: usize,
        acc: &LinearFn,
        out_arcs: &[Vec<(usize, LinearFn)>],
        on_path: &mut [bool],
        cycles: &mut Vec<LinearFn>,
    ) {
        for (h, w) in &out_arcs[v] {
            let next = acc.add(w);
            if *h == s {
                cycles.push(next);
            } else if *h > s && !on_path[*h] {
                on_path[*h] = true;
                dfs(s, *h, &next, out_arcs, on_path, cycles);
                on_path[*h] = false;
            }
        }
    }
    for s in 0..n {
        on_path[s] = true;
        dfs(
            s,
            s,
            &LinearFn::constant(rational::zero()),
            &out_arcs,
            &mut on_path,
            &mut cycles,
        );
        on_path[s] = false;
    }
    cycles
}

/// The closed set of `λ` at which every cycle weight is nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleInterval {
    Empty,
    /// `None` marks an unbounded side.
    Interval {
        lower: Option<Rational>,
        upper: Option<Rational>,
    },
}

pub fn cycle_interval(g: &ParamDigraph) -> CycleInterval {
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for w in simple_cycle_weights(g) {
        if w.slope.is_zero() {
            if w.intercept.is_negative() {
                return CycleInterval::Empty;
            }
            continue;
        }
        let root = -&w.intercept / &w.slope;
        if w.slope.is_positive() {
            if lower.as_ref().map_or(true, |l| root > *l) {
                lower = Some(root);
            }
        } else if upper.as_ref().map_or(true, |u| root < *u) {
            upper = Some(root);
        }
    }
    match (&lower, &upper) {
        (Some(l), Some(u)) if l > u => CycleInterval::Empty,
        _ => CycleInterval::Interval { lower, upper },
    }
}

/// Largest subset of squared diameter at most `d2`, by subset enumeration.
pub fn max_cluster_bf(points: &[Point], d2: &Rational) -> usize {
    let n = points.len();
    assert!(n <= MAX_CLUSTER_POINTS, "oracle bound");
    let compat: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| points[i].dist2(&points[j]) <= *d2)
                .fold(0, |m, j| m | 1 << j)
        })
        .collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|i| s & (1 << i) == 0 || s & compat[i] == s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest set of pairwise disjoint closed diagonals, by subset enumeration.
pub fn max_disjoint_diagonals_bf(ds: &[GoodDiagonal]) -> usize {
    let n = ds.len();
    assert!(n <= MAX_DIAGONALS, "oracle bound");
    let conflict: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    j != i && segments_intersect(&ds[i].segment, &ds[j].segment) != SegmentIntersection::Disjoint
                })
                .fold(0, |m, j| m | 1 << j)
        })
        .collect();
    fn go(i: usize, chosen: u32, conflict: &[u32]) -> usize {
        if i == conflict.len() {
            return 0;
        }
        let skip = go(i + 1, chosen, conflict);
        if chosen & conflict[i] == 0 {
            skip.max(1 + go(i + 1, chosen | 1 << i, conflict))
        } else {
            skip
        }
    }
    go(0, 0, &conflict)
}

/// Minimum total bends: enumerate every junction angle assignment, derive
/// each region's net bend demand from its corner count, then ship unit
/// demands along shortest region-adjacency paths. `None` when no angle
/// assignment balances.
pub fn min_bends_bf(m: &PlaneMap) -> Option<i64> {
    assert!(m.junctions.len() <= MAX_BEND_JUNCTIONS, "oracle bound");
    let rn = m.regions.len();
    let mut adj = vec![Vec::new(); rn];
    for &(a, b) in &m.adjacencies {
        adj[a].push(b);
        adj[b].push(a);
    }
    let hops: Vec<Vec<i64>> = (0..rn)
        .map(|s| {
            let mut d = vec![i64::MAX; rn];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &u in &adj[v] {
                    if d[u] == i64::MAX {
                        d[u] = d[v] + 1;
                        q.push_back(u);
                    }
                }
            }
            d
        })
        .collect();
    let choices: Vec<Vec<Vec<i64>>> = m.junctions.iter().map(|rot| angle_choices(rot.len())).collect();
    let mut best: Option<i64> = None;
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut demand: Vec<i64> = (0..rn).map(|r| if r == m.exterior { -4 } else { 4 }).collect();
        for (j, rot) in m.junctions.iter().enumerate() {
            for (&r, &u) in rot.iter().zip(&choices[j][pick[j]]) {
                demand[r] -= 2 - u;
            }
        }
        if demand.iter().sum::<i64>() == 0 {
            let cost = transport(&demand, &hops);
            if best.map_or(true, |b| cost < b) {
                best = Some(cost);
            }
        }
        let mut j = 0;
        while j < pick.len() {
            pick[j] += 1;
            if pick[j] < choices[j].len() {
                break;
            }
            pick[j] = 0;
            j += 1;
        }
        if j == pick.len() {
            return best;
        }
    }
}

/// Quarter-turn assignments to `degree` slots, each at least one, summing
/// to four.
fn angle_choices(degree: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn go(left: usize, sum: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            if sum == 4 {
                out.push(cur.clone());
            }
            return;
        }
        for u in 1..=3 {
            cur.push(u);
            go(left - 1, sum + u, cur, out);
            cur.pop();
        }
    }
    go(degree, 0, &mut Vec::new(), &mut out);
    out
}

/// Cheapest unit-by-unit pairing of positive demands with negative ones
/// under hop distance, memoized on remaining supplies.
fn transport(demand: &[i64], hops: &[Vec<i64>]) -> i64 {
    let sinks: Vec<usize> = demand
        .iter()
        .enumerate()
        .flat_map(|(r, &d)| std::iter::repeat(r).take(d.max(0) as usize))
        .collect();
    let sources: Vec<usize> = (0..demand.len()).filter(|&r| demand[r] < 0).collect();
    let supply: Vec<i64> = sources.iter().map(|&r| -demand[r]).collect();
    fn go(
        i: usize,
        supply: &mut Vec<i64>,
        sinks: &[usize],
        sources: &[usize],
        hops: &[Vec<i64>],
        memo: &mut HashMap<(usize, Vec<i64>), i64>,
    ) -> i64 {
        if i == sinks.len() {
            return 0;
        }
        if let Some(&x) = memo.get(&(i, supply.clone())) {
            return x;
        }
        let mut best = i64::MAX;
        for s in 0..sources.len() {
            if supply[s] > 0 {
                supply[s] -= 1;
                let rest = go(i + 1, supply, sinks, sources, hops, memo);
                supply[s] += 1;
                best = best.min(hops[sources[s]][sinks[i]] + rest);
            }
        }
        memo.insert((i, supply.clone()), best);
        best
    }
    go(0, &mut supply.clone(), &sinks, &sources, hops, &mut HashMap::new())
}

/// Whether hub distances with `H_p + H_q ≥ D[p][q]`, `H_p + H_q ≤ δ·D[p][q]`
/// and `H ≥ 0` exist, as a difference-constraint system on `H` and `−H`.
pub fn star_feasible(d: &DistanceMatrix, delta: &Rational) -> bool {
    let n = d.len();
    // Vertex `p` carries `H_p`, vertex `n + p` carries `−H_p`.
    let mut g = WeightedDigraph::new(2 * n + 1);
    for v in 0..2 * n {
        g.add_arc(2 * n, v, rational::zero());
    }
    for p in 0..n {
        g.add_arc(p, n + p, rational::zero());
        for q in 0..n {
            if p != q {
                g.add_arc(p, n + q, -d.get(p, q));
                g.add_arc(n + q, p, delta * d.get(p, q));
            }
        }
    }
    matches!(bellman_ford(&g, 2 * n), ShortestPaths::Distances(_))
}

/// Optimal dilation by bisection on `star_feasible`, to an interval of
/// width at most `tol`; returns the feasible end.
pub fn star_bisection(d: &DistanceMatrix, tol: &Rational) -> Rational {
    let n = d.len();
    let mut max = rational::zero();
    let mut min: Option<Rational> = None;
    for p in 0..n {
        for q in p + 1..n {
            let x = d.get(p, q);
            if *x > max {
                max = x.clone();
            }
            if min.as_ref().map_or(true, |m| x < m) {
                min = Some(x.clone());
            }
        }
    }
    let mut lo = rational::one();
    let mut hi = max / min.expect("at least two points");
    if star_feasible(d, &lo) {
        return lo;
    }
    debug_assert!(star_feasible(d, &hi));
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / rational::int(2);
        if star_feasible(d, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

//! Largest point set of bounded diameter, and the smallest-diameter set of
//! `k` points, by bisecting each candidate lune.

use crate::geometry::{lune_contains, LunePosition, Point};
use crate::graph::{konig_independent_set, max_bipartite_matching, BipartiteGraph};
use crate::rational::{self, Rational};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cluster {
    /// Sorted point indices.
    pub members: Vec<usize>,
    /// Realizes the diameter; `None` when fewer than two members.
    pub pair: Option<(usize, usize)>,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub diameter2: Rational,
}

impl Cluster {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn singleton(i: usize) -> Self {
        Cluster {
            members: vec![i],
            pair: None,
            diameter2: rational::zero(),
        }
    }

    /// Larger first, then lexicographically smaller member list.
    fn better_than(&self, other: &Cluster) -> bool {
        self.len() > other.len() || (self.len() == other.len() && self.members < other.members)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("k = {k} is outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("negative squared diameter bound {0}")]
    NegativeBound(String),
    #[error("p and q must be distinct indices")]
    SamePair,
}

/// Points of the closed lune of `p` and `q`, split by the line `pq`, with
/// conflict edges between points farther apart than `|pq|`.
#[derive(Clone, Debug)]
pub struct LuneConflicts {
    /// Left of `pq`, plus the axis.
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    /// Every pair of lune points farther apart than `|pq|`.
    pub conflicts: Vec<(usize, usize)>,
}

impl LuneConflicts {
    /// No conflict lies within one side.
    pub fn is_bipartite_across_axis(&self) -> bool {
        self.conflicts
            .iter()
            .all(|&(u, v)| self.side_a.contains(&u) != self.side_a.contains(&v))
    }
}

pub fn lune_conflicts(points: &[Point], p: usize, q: usize) -> LuneConflicts {
    let (pp, pq) = (&points[p], &points[q]);
    let r2 = pp.dist2(pq);
    let mut side_a = Vec::new();
    let mut side_b = Vec::new();
    for (i, x) in points.iter().enumerate() {
        if i == p || i == q {
            continue;
        }
        match lune_contains(pp, pq, x) {
            LunePosition::SideA | LunePosition::OnAxis => side_a.push(i),
            LunePosition::SideB => side_b.push(i),
            LunePosition::Outside => {}
        }
    }
    let lune: Vec<usize> = side_a.iter().chain(&side_b).copied().collect();
    let mut conflicts = Vec::new();
    for (x, &u) in lune.iter().enumerate() {
        for &v in &lune[x + 1..] {
            if points[u].dist2(&points[v]) > r2 {
                conflicts.push((u.min(v), u.max(v)));
            }
        }
    }
    LuneConflicts {
        side_a,
        side_b,
        conflicts,
    }
}

/// Largest cluster containing `p` and `q` whose diameter is exactly `|pq|`.
pub fn cluster_for_pair(points: &[Point], p: usize, q: usize) -> Result<Cluster, ClusterError> {
    if p == q {
        return Err(ClusterError::SamePair);
    }
    let lc = lune_conflicts(points, p, q);
    assert!(lc.is_bipartite_across_axis(), "half-lunes have diameter at most |pq|");
    let left_of = |i: usize| lc.side_a.iter().position(|&x| x == i);
    let right_of = |i: usize| lc.side_b.iter().position(|&x| x == i);
    let edges: Vec<(usize, usize)> = lc
        .conflicts
        .iter()
        .map(|&(u, v)| match left_of(u) {
            Some(l) => (l, right_of(v).expect("bipartite")),
            None => (left_of(v).expect("bipartite"), right_of(u).expect("bipartite")),
        })
        .collect();
    let g = BipartiteGraph::new(lc.side_a.len(), lc.side_b.len(), edges).expect("conflict pairs are distinct");
    let m = max_bipartite_matching(&g);
    let set = konig_independent_set(&g, &m).expect("matching is maximum");
    let mut members: Vec<usize> = set
        .left
        .iter()
        .map(|&l| lc.side_a[l])
        .chain(set.right.iter().map(|&r| lc.side_b[r]))
        .chain([p, q])
        .collect();
    members.sort_unstable();
    Ok(Cluster {
        members,
        pair: Some((p.min(q), p.max(q))),
        diameter2: points[p].dist2(&points[q]),
    })
}

/// Largest subset whose squared diameter is at most `d2`.
pub fn max_cluster_given_d2(points: &[Point], d2: &Rational) -> Result<Cluster, ClusterError> {
    if *d2 < rational::zero() {
        return Err(ClusterError::NegativeBound(rational::format(d2)));
    }
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| points[i].dist2(&points[j]) <= *d2)
        .collect();
    let best = pairs
        .par_iter()
        .map(|&(i, j)| cluster_for_pair(points, i, j).expect("distinct indices"))
        .reduce_with(|a, b| if b.better_than(&a) { b } else { a });
    Ok(match best {
        Some(c) => c,
        None if n > 0 => Cluster::singleton(0),
        None => Cluster {
            members: vec![],
            pair: None,
            diameter2: rational::zero(),
        },
    })
}

/// Sorted distinct pairwise squared distances.
pub fn candidate_diameters(points: &[Point]) -> Vec<Rational> {
    let mut d: Vec<Rational> = (0..points.len())
        .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
        .map(|(i, j)| points[i].dist2(&points[j]))
        .collect();
    d.sort();
    d.dedup();
    d
}

/// Exactly `k` points of minimum diameter.
pub fn min_diameter_k_cluster(points: &[Point], k: usize) -> Result<Cluster, ClusterError> {
    let n = points.len();
    if k < 1 || k > n {
        return Err(ClusterError::KOutOfRange { k, n });
    }
    if k == 1 {
        return Ok(Cluster::singleton(0));
    }
    let ds = candidate_diameters(points);
    // The largest candidate admits every point, so the search is well posed.
    let (mut lo, mut hi) = (0, ds.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if max_cluster_given_d2(points, &ds[mid])?.len() >= k {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let full = max_cluster_given_d2(points, &ds[lo])?;
    let (p, q) = full.pair.expect("k ≥ 2 forces a pair");
    let mut members: Vec<usize> = vec![p, q];
    members.extend(full.members.iter().filter(|&&i| i != p && i != q).take(k - 2));
    members.sort_unstable();
    Ok(Cluster {
        members,
        pair: Some((p, q)),
        diameter2: full.diameter2,
    })
}

/// Largest pairwise squared distance among `members`.
pub fn squared_diameter(points: &[Point], members: &[usize]) -> Rational {
    let mut best = rational::zero();
    for (x, &i) in members.iter().enumerate() {
        for &j in &members[x + 1..] {
            let d = points[i].dist2(&points[j]);
            if d > best {
                best = d;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn square() -> Vec<Point> {
        [(0, 0), (1, 0), (1, 1), (0, 1)]
            .iter()
            .map(|&(x, y)| Point::from_ints(x, y))
            .collect()
    }

    #[test]
    fn pair_clusters_on_square() {
        let s = square();
        assert_eq!(cluster_for_pair(&s, 0, 1).unwrap().members, vec![0, 1]);
        let diag = cluster_for_pair(&s, 0, 2).unwrap();
        assert_eq!(diag.members, vec![0, 1, 2, 3]);
        assert_eq!(diag.diameter2, int(2));
        assert_eq!(cluster_for_pair(&s[..2], 0, 1).unwrap().len(), 2);
        assert_eq!(cluster_for_pair(&s, 1, 1), Err(ClusterError::SamePair));
    }

    #[test]
    fn bounded_diameter_on_square() {
        let s = square();
        assert_eq!(max_cluster_given_d2(&s, &int(1)).unwrap().len(), 2);
        assert_eq!(max_cluster_given_d2(&s, &int(2)).unwrap().len(), 4);
        assert_eq!(max_cluster_given_d2(&s[..1], &int(7)).unwrap().len(), 1);
        assert_eq!(max_cluster_given_d2(&s, &rational::ratio(1, 2)).unwrap().len(), 1);
        assert!(max_cluster_given_d2(&s, &int(-1)).is_err());
    }

    #[test]
    fn k_clusters_on_square() {
        let s = square();
        assert_eq!(min_diameter_k_cluster(&s, 2).unwrap().diameter2, int(1));
        let three = min_diameter_k_cluster(&s, 3).unwrap();
        assert_eq!(three.len(), 3);
        assert_eq!(three.diameter2, int(2));
        assert_eq!(squared_diameter(&s, &three.members), int(2));
        assert_eq!(min_diameter_k_cluster(&s, 1).unwrap().diameter2, int(0));
        assert_eq!(
            min_diameter_k_cluster(&s, 5),
            Err(ClusterError::KOutOfRange { k: 5, n: 4 })
        );
    }
}

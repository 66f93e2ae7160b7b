use crate::rational::{zero, Rational};
use num::Zero;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedArc {
    pub tail: usize,
    pub head: usize,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub weight: Rational,
}

/// Directed graph with exact weights; parallel arcs and loops allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedDigraph {
    pub vertex_count: usize,
    pub arcs: Vec<WeightedArc>,
}

impl WeightedDigraph {
    pub fn new(vertex_count: usize) -> Self {
        WeightedDigraph {
            vertex_count,
            arcs: Vec::new(),
        }
    }

    /// Returns the new arc's index.
    pub fn add_arc(&mut self, tail: usize, head: usize, weight: Rational) -> usize {
        assert!(
            tail < self.vertex_count && head < self.vertex_count,
            "arc ({tail}, {head}) out of range"
        );
        self.arcs.push(WeightedArc { tail, head, weight });
        self.arcs.len() - 1
    }
}

/// Arc indices in traversal order; the weight is the exact sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeCycle {
    pub arcs: Vec<usize>,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShortestPaths {
    /// `None` marks vertices unreachable from the source.
    Distances(Vec<Option<Rational>>),
    NegativeCycle(NegativeCycle),
}

pub fn bellman_ford(g: &WeightedDigraph, source: usize) -> ShortestPaths {
    assert!(source < g.vertex_count, "source {source} out of range");
    let mut dist = vec![None; g.vertex_count];
    dist[source] = Some(zero());
    match relax(g, dist) {
        Ok(d) => ShortestPaths::Distances(d),
        Err(c) => ShortestPaths::NegativeCycle(c),
    }
}

/// Feasible potentials (distances from a virtual source joined to every
/// vertex by a zero arc), or a negative cycle anywhere in the graph.
pub fn potentials(g: &WeightedDigraph) -> Result<Vec<Rational>, NegativeCycle> {
    let dist = vec![Some(zero()); g.vertex_count];
    relax(g, dist).map(|d| d.into_iter().map(|x| x.expect("all reachable")).collect())
}

pub fn find_negative_cycle(g: &WeightedDigraph) -> Option<NegativeCycle> {
    potentials(g).err()
}

pub fn cycle_weight(g: &WeightedDigraph, arcs: &[usize]) -> Rational {
    arcs.iter().map(|&a| &g.arcs[a].weight).sum()
}

/// Closed walk check: each arc's head is the next arc's tail.
pub fn is_closed_walk(g: &WeightedDigraph, arcs: &[usize]) -> bool {
    !arcs.is_empty() && (0..arcs.len()).all(|i| g.arcs[arcs[i]].head == g.arcs[arcs[(i + 1) % arcs.len()]].tail)
}

fn relax(g: &WeightedDigraph, mut dist: Vec<Option<Rational>>) -> Result<Vec<Option<Rational>>, NegativeCycle> {
    let n = g.vertex_count;
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last_updated = None;
    for _ in 0..n.max(1) {
        last_updated = None;
        for (i, arc) in g.arcs.iter().enumerate() {
            let Some(du) = &dist[arc.tail] else { continue };
            let cand = du + &arc.weight;
            let better = match &dist[arc.head] {
                None => true,
                Some(dv) => cand < *dv,
            };
            if better {
                dist[arc.head] = Some(cand);
                pred[arc.head] = Some(i);
                last_updated = Some(arc.head);
            }
        }
        if last_updated.is_none() {
            return Ok(dist);
        }
    }
    let Some(mut v) = last_updated else {
        return Ok(dist);
    };
    // n predecessor steps land on the cycle.
    for _ in 0..n {
        v = g.arcs[pred[v].expect("updated vertex has a predecessor")].tail;
    }
    let start = v;
    let mut arcs = Vec::new();
    loop {
        let a = pred[v].expect("cycle vertex has a predecessor");
        arcs.push(a);
        v = g.arcs[a].tail;
        if v == start {
            break;
        }
    }
    arcs.reverse();
    let weight = cycle_weight(g, &arcs);
    assert!(weight < Rational::zero(), "predecessor cycle must have negative weight");
    Err(NegativeCycle { arcs, weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn negative_triangle() {
        let mut g = WeightedDigraph::new(3);
        g.add_arc(0, 1, int(1));
        g.add_arc(1, 2, int(1));
        g.add_arc(2, 0, int(-3));
        match bellman_ford(&g, 0) {
            ShortestPaths::NegativeCycle(c) => {
                assert_eq!(c.weight, int(-1));
                assert_eq!(c.arcs.len(), 3);
                assert!(is_closed_walk(&g, &c.arcs));
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn dag_distances() {
        let mut g = WeightedDigraph::new(3);
        g.add_arc(0, 1, int(2));
        g.add_arc(1, 2, int(3));
        assert_eq!(
            bellman_ford(&g, 0),
            ShortestPaths::Distances(vec![Some(int(0)), Some(int(2)), Some(int(5))])
        );
        assert_eq!(
            bellman_ford(&g, 1),
            ShortestPaths::Distances(vec![None, Some(int(0)), Some(int(3))])
        );
    }

    #[test]
    fn unreachable_cycle_found_only_globally() {
        let mut g = WeightedDigraph::new(3);
        g.add_arc(1, 2, int(-1));
        g.add_arc(2, 1, int(-1));
        assert!(matches!(bellman_ford(&g, 0), ShortestPaths::Distances(_)));
        let c = find_negative_cycle(&g).unwrap();
        assert_eq!(c.weight, int(-2));
    }

    #[test]
    fn negative_self_loop() {
        let mut g = WeightedDigraph::new(1);
        g.add_arc(0, 0, int(-1));
        assert_eq!(find_negative_cycle(&g).unwrap().arcs, vec![0]);
    }
}

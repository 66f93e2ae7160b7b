use super::{find_negative_cycle, WeightedDigraph};
use crate::rational;
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub lower: i64,
    pub upper: i64,
    pub cost: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FlowNetwork {
    pub vertex_count: usize,
    pub arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(vertex_count: usize) -> Self {
        FlowNetwork {
            vertex_count,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, lower: i64, upper: i64, cost: i64) -> usize {
        self.arcs.push(FlowArc {
            tail,
            head,
            lower,
            upper,
            cost,
        });
        self.arcs.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Circulation {
    pub flow: Vec<i64>,
    pub cost: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("arc {arc} has an endpoint out of range")]
    ArcOutOfRange { arc: usize },
    #[error("arc {arc} has lower bound {lower} above upper bound {upper}")]
    InvertedBounds { arc: usize, lower: i64, upper: i64 },
    #[error("arc {arc} has negative cost {cost}")]
    NegativeCost { arc: usize, cost: i64 },
    /// `cut` lists the vertices on the source side of a saturated cut.
    #[error("infeasible: {unmet} unit(s) of forced excess cannot be routed; source side of violated cut: {cut:?}")]
    Infeasible { unmet: i64, cut: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CirculationViolation {
    #[error("flow vector has {got} entries, network has {expected} arcs")]
    WrongLength { expected: usize, got: usize },
    #[error("arc {arc} carries {flow}, outside [{lower}, {upper}]")]
    Bounds {
        arc: usize,
        flow: i64,
        lower: i64,
        upper: i64,
    },
    #[error("vertex {vertex} has net outflow {excess}")]
    Conservation { vertex: usize, excess: i64 },
}

pub fn check_circulation(net: &FlowNetwork, flow: &[i64]) -> Result<(), CirculationViolation> {
    if flow.len() != net.arcs.len() {
        return Err(CirculationViolation::WrongLength {
            expected: net.arcs.len(),
            got: flow.len(),
        });
    }
    let mut net_out = vec![0i64; net.vertex_count];
    for (i, (arc, &f)) in net.arcs.iter().zip(flow).enumerate() {
        if f < arc.lower || f > arc.upper {
            return Err(CirculationViolation::Bounds {
                arc: i,
                flow: f,
                lower: arc.lower,
                upper: arc.upper,
            });
        }
        net_out[arc.tail] += f;
        net_out[arc.head] -= f;
    }
    match net_out.iter().position(|&e| e != 0) {
        Some(v) => Err(CirculationViolation::Conservation {
            vertex: v,
            excess: net_out[v],
        }),
        None => Ok(()),
    }
}

/// Conservation at every vertex and bounds on every arc.
pub fn verify_circulation(net: &FlowNetwork, flow: &[i64]) -> bool {
    check_circulation(net, flow).is_ok()
}

pub fn circulation_cost(net: &FlowNetwork, flow: &[i64]) -> i64 {
    net.arcs.iter().zip(flow).map(|(a, f)| a.cost * f).sum()
}

/// Optimality certificate: the residual network has no negative cycle.
pub fn residual_has_negative_cycle(net: &FlowNetwork, flow: &[i64]) -> bool {
    let mut g = WeightedDigraph::new(net.vertex_count);
    for (arc, &f) in net.arcs.iter().zip(flow) {
        if f < arc.upper {
            g.add_arc(arc.tail, arc.head, rational::int(arc.cost));
        }
        if f > arc.lower {
            g.add_arc(arc.head, arc.tail, rational::int(-arc.cost));
        }
    }
    find_negative_cycle(&g).is_some()
}

struct Edge {
    to: usize,
    cap: i64,
    cost: i64,
}

struct Residual {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Forward edge id; the reverse edge is `id ^ 1`.
    fn add(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.adj[from].push(id);
        self.edges.push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.adj[to].push(id + 1);
        id
    }
}

/// Minimum-cost circulation by the lower-bound excess transform followed by
/// successive shortest augmenting paths with Dijkstra potentials.
pub fn min_cost_circulation(net: &FlowNetwork) -> Result<Circulation, FlowError> {
    let n = net.vertex_count;
    for (i, a) in net.arcs.iter().enumerate() {
        if a.tail >= n || a.head >= n {
            return Err(FlowError::ArcOutOfRange { arc: i });
        }
        if a.lower > a.upper {
            return Err(FlowError::InvertedBounds {
                arc: i,
                lower: a.lower,
                upper: a.upper,
            });
        }
        if a.cost < 0 {
            return Err(FlowError::NegativeCost { arc: i, cost: a.cost });
        }
    }
    let (source, sink) = (n, n + 1);
    let mut res = Residual::new(n + 2);
    let mut excess = vec![0i64; n];
    let mut ids = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        excess[a.head] += a.lower;
        excess[a.tail] -= a.lower;
        ids.push(res.add(a.tail, a.head, a.upper - a.lower, a.cost));
    }
    let mut required = 0;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            res.add(source, v, e, 0);
            required += e;
        } else if e < 0 {
            res.add(v, sink, -e, 0);
        }
    }

    let total = n + 2;
    let mut potential = vec![0i64; total];
    let mut sent = 0;
    while sent < required {
        let mut dist = vec![i64::MAX; total];
        let mut prev_edge = vec![usize::MAX; total];
        dist[source] = 0;
        let mut heap = BinaryHeap::from([Reverse((0i64, source))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &res.adj[u] {
                let edge = &res.edges[e];
                if edge.cap <= 0 {
                    continue;
                }
                let nd = d + edge.cost + potential[u] - potential[edge.to];
                if nd < dist[edge.to] {
                    dist[edge.to] = nd;
                    prev_edge[edge.to] = e;
                    heap.push(Reverse((nd, edge.to)));
                }
            }
        }
        if dist[sink] == i64::MAX {
            let cut = (0..n).filter(|&v| dist[v] != i64::MAX).collect();
            return Err(FlowError::Infeasible {
                unmet: required - sent,
                cut,
            });
        }
        for v in 0..total {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }
        let mut push = required - sent;
        let mut v = sink;
        while v != source {
            let e = prev_edge[v];
            push = push.min(res.edges[e].cap);
            v = res.edges[e ^ 1].to;
        }
        let mut v = sink;
        while v != source {
            let e = prev_edge[v];
            res.edges[e].cap -= push;
            res.edges[e ^ 1].cap += push;
            v = res.edges[e ^ 1].to;
        }
        sent += push;
    }

    let flow: Vec<i64> = net
        .arcs
        .iter()
        .zip(&ids)
        .map(|(a, &id)| a.lower + res.edges[id ^ 1].cap)
        .collect();
    let cost = circulation_cost(net, &flow);
    debug_assert!(verify_circulation(net, &flow));
    Ok(Circulation { flow, cost })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_triangle() {
        let mut net = FlowNetwork::new(3);
        for i in 0..3 {
            net.add_arc(i, (i + 1) % 3, 1, 1, 1);
        }
        let c = min_cost_circulation(&net).unwrap();
        assert_eq!(c.flow, vec![1, 1, 1]);
        assert_eq!(c.cost, 3);
        assert!(!residual_has_negative_cycle(&net, &c.flow));
    }

    #[test]
    fn cheaper_parallel_path_wins() {
        // Forced unit from 1 back to 0; paths 0->1 cost 1 or 0->2->1 cost 5.
        let mut net = FlowNetwork::new(3);
        net.add_arc(1, 0, 1, 1, 0);
        net.add_arc(0, 1, 0, 10, 1);
        net.add_arc(0, 2, 0, 10, 2);
        net.add_arc(2, 1, 0, 10, 3);
        let c = min_cost_circulation(&net).unwrap();
        assert_eq!(c.cost, 1);
        assert_eq!(c.flow, vec![1, 1, 0, 0]);
    }

    #[test]
    fn inverted_bounds_and_infeasibility() {
        let mut net = FlowNetwork::new(2);
        net.add_arc(0, 1, 2, 1, 0);
        assert!(matches!(
            min_cost_circulation(&net),
            Err(FlowError::InvertedBounds { arc: 0, .. })
        ));

        let mut net = FlowNetwork::new(2);
        net.add_arc(0, 1, 2, 2, 0);
        net.add_arc(1, 0, 0, 1, 0);
        match min_cost_circulation(&net) {
            Err(FlowError::Infeasible { unmet, cut }) => {
                assert_eq!(unmet, 1);
                assert_eq!(cut, vec![1]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn verify_detects_perturbation() {
        let mut net = FlowNetwork::new(3);
        for i in 0..3 {
            net.add_arc(i, (i + 1) % 3, 1, 2, 1);
        }
        let c = min_cost_circulation(&net).unwrap();
        assert!(verify_circulation(&net, &c.flow));
        let mut bad = c.flow.clone();
        bad[0] += 1;
        assert!(!verify_circulation(&net, &bad));
        assert!(!verify_circulation(&net, &[0, 0, 0]));
    }
}

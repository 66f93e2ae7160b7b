#![allow(dead_code)]

use geomgraph::graph::{BipartiteGraph, FlowNetwork};
use geomgraph::parametric::ParamDigraph;
use geomgraph::rational::{int, ratio};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// At most 12 vertices split between the two sides, edge density varied.
pub fn random_bipartite(rng: &mut ChaCha8Rng) -> BipartiteGraph {
    let l = rng.gen_range(0..=6);
    let r = rng.gen_range(0..=12 - l);
    let p = rng.gen_range(0.05..0.8);
    let edges = (0..l)
        .flat_map(|a| (0..r).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    BipartiteGraph::new(l, r, edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let p = rng.gen_range(0.1..0.9);
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect()
}

/// Small networks with nonnegative costs and some forced flow; many are
/// feasible, some are not.
pub fn random_flow_network(rng: &mut ChaCha8Rng) -> FlowNetwork {
    let n = rng.gen_range(2..=7);
    let mut net = FlowNetwork::new(n);
    for _ in 0..rng.gen_range(n..=3 * n) {
        let (t, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if t == h {
            continue;
        }
        let lower = if rng.gen_bool(0.3) { rng.gen_range(0..=2) } else { 0 };
        let upper = lower + rng.gen_range(0..=4);
        net.add_arc(t, h, lower, upper, rng.gen_range(0..=5));
    }
    net
}

/// Up to `max_n` vertices with small rational intercepts and slopes.
pub fn random_param_digraph(rng: &mut ChaCha8Rng, max_n: usize) -> ParamDigraph {
    let n = rng.gen_range(1..=max_n);
    let mut g = ParamDigraph::new(n);
    for _ in 0..rng.gen_range(1..=2 * n + 2) {
        let (t, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let intercept = ratio(rng.gen_range(-12..=12), rng.gen_range(1..=3));
        let slope = int(rng.gen_range(-2..=2));
        g.add_arc(t, h, intercept, slope);
    }
    g
}

//! Exact graph algorithms shared by the solvers.

mod bipartite;
mod flow;
mod general_matching;
mod shortest_path;

pub use bipartite::{
    has_augmenting_path, konig_independent_set, max_bipartite_matching, BipartiteError, BipartiteGraph, IndependentSet,
    KonigError, Matching,
};
pub use flow::{
    check_circulation, circulation_cost, min_cost_circulation, residual_has_negative_cycle, verify_circulation,
    Circulation, CirculationViolation, FlowArc, FlowError, FlowNetwork,
};
pub use general_matching::{maximum_matching_general, perfect_matching_general};
pub use shortest_path::{
    bellman_ford, cycle_weight, find_negative_cycle, is_closed_walk, potentials, NegativeCycle, ShortestPaths,
    WeightedArc, WeightedDigraph,
};

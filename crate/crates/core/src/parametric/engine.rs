use super::{CycleReport, ParamDigraph, PlConcaveFn};
use crate::graph::{find_negative_cycle, potentials, WeightedDigraph};
use crate::rational::{self, Rational};
use num::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;

pub type PlMatrix = Vec<Vec<PlConcaveFn>>;

/// Finite endpoints are attained: cycle weights are continuous in `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Unbounded,
    /// `witness` is a cycle (arc indices) whose weight vanishes at `value`
    /// and turns negative just beyond it.
    Finite {
        value: Rational,
        witness: Vec<usize>,
    },
}

impl Endpoint {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Endpoint::Unbounded => None,
            Endpoint::Finite { value, .. } => Some(value),
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Endpoint::Unbounded => None,
            Endpoint::Finite { witness, .. } => Some(witness),
        }
    }
}

/// The closed set of `λ` for which every directed cycle has nonnegative weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibleInterval {
    /// Each witness is negative on a ray (or everywhere); together they
    /// cover the whole line.
    Empty {
        witnesses: Vec<Vec<usize>>,
    },
    Interval {
        lower: Endpoint,
        upper: Endpoint,
    },
}

impl FeasibleInterval {
    pub fn is_empty(&self) -> bool {
        matches!(self, FeasibleInterval::Empty { .. })
    }

    pub fn contains(&self, lambda: &Rational) -> bool {
        match self {
            FeasibleInterval::Empty { .. } => false,
            FeasibleInterval::Interval { lower, upper } => {
                lower.value().is_none_or(|l| l <= lambda) && upper.value().is_none_or(|u| lambda <= u)
            }
        }
    }

    pub fn lower(&self) -> Option<&Endpoint> {
        match self {
            FeasibleInterval::Empty { .. } => None,
            FeasibleInterval::Interval { lower, .. } => Some(lower),
        }
    }

    pub fn upper(&self) -> Option<&Endpoint> {
        match self {
            FeasibleInterval::Empty { .. } => None,
            FeasibleInterval::Interval { upper, .. } => Some(upper),
        }
    }

    pub fn to_json(&self, g: &ParamDigraph) -> serde_json::Value {
        #[derive(Serialize)]
        struct Side {
            value: Option<serde_json::Value>,
            witness: Option<CycleReport>,
        }
        let side = |e: &Endpoint| Side {
            value: e.value().map(rational::to_json),
            witness: e.witness().map(|w| CycleReport::new(g, w)),
        };
        match self {
            FeasibleInterval::Empty { witnesses } => serde_json::json!({
                "empty": true,
                "witnesses": witnesses.iter().map(|w| CycleReport::new(g, w)).collect::<Vec<_>>(),
            }),
            FeasibleInterval::Interval { lower, upper } => serde_json::json!({
                "empty": false,
                "lower": side(lower),
                "upper": side(upper),
            }),
        }
    }
}

/// Entry `(i, j)` is the minimum over arcs `i → j`; `+∞` when there are none.
pub fn one_hop_matrix(g: &ParamDigraph) -> PlMatrix {
    let n = g.vertex_count;
    let mut lines = vec![vec![Vec::new(); n]; n];
    for a in &g.arcs {
        lines[a.tail][a.head].push(a.weight.clone());
    }
    lines
        .into_iter()
        .map(|row| row.into_iter().map(PlConcaveFn::from_lines).collect())
        .collect()
}

/// `R[i][j] = min(M[i][j], min_k M[i][k] + M[k][j])`: applied `t` times to
/// the one-hop matrix, entry `(i, j)` is the minimum weight of a walk with
/// between 1 and `2^t` arcs. Rows are computed in parallel.
pub fn pl_minplus_square(m: &[Vec<PlConcaveFn>]) -> PlMatrix {
    let n = m.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut best = m[i][j].clone();
                    for k in 0..n {
                        if m[i][k].is_infinite() || m[k][j].is_infinite() {
                            continue;
                        }
                        best = best.min(&m[i][k].add(&m[k][j]));
                    }
                    best
                })
                .collect()
        })
        .collect()
}

fn squarings_needed(n: usize) -> u32 {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

/// Decides `λ_lo ≤ β` from one Bellman–Ford run at `β`. A constant
/// negative cycle proves emptiness and is returned as the error.
fn lower_at_most(g: &ParamDigraph, beta: &Rational) -> Result<bool, Vec<usize>> {
    match find_negative_cycle(&g.at(beta)) {
        None => Ok(true),
        Some(c) => {
            let slope = g.cycle_weight(&c.arcs).slope;
            match slope.cmp(&rational::zero()) {
                // Negative for every λ ≥ β, so the feasible set lies left of β.
                Ordering::Less => Ok(true),
                // Negative for every λ ≤ β.
                Ordering::Greater => Ok(false),
                Ordering::Equal => Err(c.arcs),
            }
        }
    }
}

/// The infimum of the feasible set, assuming it is nonempty; `Ok(None)`
/// means unbounded below.
fn search_lower(g: &ParamDigraph) -> Result<Option<Rational>, Vec<usize>> {
    let n = g.vertex_count;
    if n == 0 {
        return Ok(None);
    }
    // Invariant: λ_lo lies in [lo, hi], with None as the infinite ends.
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut m = one_hop_matrix(g);
    for step in 0..=squarings_needed(n) {
        if step > 0 {
            m = pl_minplus_square(&m);
        }
        let mut bps: Vec<Rational> = m
            .iter()
            .flatten()
            .flat_map(|f| f.breakpoints())
            .filter(|x| lo.as_ref().is_none_or(|l| x > l) && hi.as_ref().is_none_or(|h| x < h))
            .collect();
        bps.sort();
        bps.dedup();
        let (mut a, mut b) = (0, bps.len());
        while a < b {
            let mid = (a + b) / 2;
            if lower_at_most(g, &bps[mid])? {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        if a > 0 {
            lo = Some(bps[a - 1].clone());
        }
        if a < bps.len() {
            hi = Some(bps[a].clone());
        }
        m = m
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|f| {
                        let r = f.restrict(lo.as_ref(), hi.as_ref());
                        assert!(r.pieces().len() <= 1, "entry not linear after narrowing");
                        r
                    })
                    .collect()
            })
            .collect();
    }
    // Every simple cycle has at most n arcs, so the diagonal now bounds all of them.
    let mut best: Option<Rational> = None;
    for (i, row) in m.iter().enumerate() {
        if let Some(piece) = row[i].pieces().first() {
            if piece.slope.is_positive() {
                let r = piece.root().expect("nonzero slope");
                if best.as_ref().is_none_or(|b| &r > b) {
                    best = Some(r);
                }
            }
        }
    }
    Ok(best)
}

/// A cycle with zero weight at `value` and positive slope, taken from the
/// arcs that are tight under feasible potentials at `value`.
fn lower_witness(g: &ParamDigraph, value: &Rational) -> Vec<usize> {
    let at = g.at(value);
    let pot = potentials(&at).expect("feasible at the endpoint");
    let mut tight = WeightedDigraph::new(g.vertex_count);
    let mut origin = Vec::new();
    for (i, a) in at.arcs.iter().enumerate() {
        if &pot[a.tail] + &a.weight == pot[a.head] {
            tight.add_arc(a.tail, a.head, -&g.arcs[i].weight.slope);
            origin.push(i);
        }
    }
    let c = find_negative_cycle(&tight).expect("a tight cycle with positive slope exists");
    let arcs: Vec<usize> = c.arcs.iter().map(|&k| origin[k]).collect();
    let w = g.cycle_weight(&arcs);
    assert!(w.eval(value).is_zero() && w.slope.is_positive());
    arcs
}

/// Cycles negative on rays that together cover the line, found by hopping
/// to the root of each cycle until the direction flips.
fn emptiness_certificate(g: &ParamDigraph, start: &Rational) -> Vec<Vec<usize>> {
    let first = find_negative_cycle(&g.at(start)).expect("infeasible at the probe");
    let mut current = first.arcs;
    loop {
        let w = g.cycle_weight(&current);
        let Some(root) = w.root() else {
            return vec![current];
        };
        let next = find_negative_cycle(&g.at(&root)).expect("infeasible everywhere").arcs;
        let nw = g.cycle_weight(&next);
        if nw.slope.is_zero() {
            return vec![next];
        }
        if nw.slope.signum() != w.slope.signum() {
            return vec![current, next];
        }
        current = next;
    }
}

/// Exact feasible interval by Savage squaring with breakpoint search, one
/// endpoint at a time; the upper endpoint is the lower endpoint of the
/// mirrored graph `λ ↦ −λ`.
pub fn parametric_feasible_interval(g: &ParamDigraph) -> FeasibleInterval {
    let lower = match search_lower(g) {
        Ok(v) => v,
        Err(c) => return FeasibleInterval::Empty { witnesses: vec![c] },
    };
    let mirror = g.mirrored();
    let upper = match search_lower(&mirror) {
        Ok(v) => v.map(|x| -x),
        Err(c) => return FeasibleInterval::Empty { witnesses: vec![c] },
    };
    let probe = lower.clone().or_else(|| upper.clone()).unwrap_or_else(rational::zero);
    let crossed = matches!((&lower, &upper), (Some(l), Some(u)) if l > u);
    if crossed || find_negative_cycle(&g.at(&probe)).is_some() {
        return FeasibleInterval::Empty {
            witnesses: emptiness_certificate(g, &probe),
        };
    }
    let lower = match lower {
        None => Endpoint::Unbounded,
        Some(value) => Endpoint::Finite {
            witness: lower_witness(g, &value),
            value,
        },
    };
    let upper = match upper {
        None => Endpoint::Unbounded,
        Some(value) => Endpoint::Finite {
            witness: lower_witness(&mirror, &-&value),
            value,
        },
    };
    FeasibleInterval::Interval { lower, upper }
}

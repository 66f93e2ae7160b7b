//! Negative-cycle detection for arc weights linear in a parameter `λ`.

mod engine;
mod karp_orlin;
mod plfn;

pub use engine::{parametric_feasible_interval, pl_minplus_square, Endpoint, FeasibleInterval};
pub use karp_orlin::{karp_orlin_threshold, KarpOrlinError, Threshold};
pub use plfn::PlConcaveFn;

use crate::graph::WeightedDigraph;
use crate::rational::{self, Rational};
use num::{Signed, Zero};
use serde::Serialize;
use std::fmt;

/// `intercept + slope · λ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearFn {
    pub intercept: Rational,
    pub slope: Rational,
}

impl LinearFn {
    pub fn new(intercept: Rational, slope: Rational) -> Self {
        LinearFn { intercept, slope }
    }

    pub fn constant(c: Rational) -> Self {
        LinearFn::new(c, rational::zero())
    }

    pub fn eval(&self, lambda: &Rational) -> Rational {
        &self.intercept + &self.slope * lambda
    }

    pub fn add(&self, other: &LinearFn) -> LinearFn {
        LinearFn::new(&self.intercept + &other.intercept, &self.slope + &other.slope)
    }

    /// The `λ` where the function vanishes, if the slope is nonzero.
    pub fn root(&self) -> Option<Rational> {
        (!self.slope.is_zero()).then(|| -&self.intercept / &self.slope)
    }

    fn negate_parameter(&self) -> LinearFn {
        LinearFn::new(self.intercept.clone(), -&self.slope)
    }
}

impl fmt::Debug for LinearFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.slope.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{} {} {}λ",
            rational::format(&self.intercept),
            sign,
            rational::format(&self.slope.abs())
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamArc {
    pub tail: usize,
    pub head: usize,
    pub weight: LinearFn,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamDigraph {
    pub vertex_count: usize,
    pub arcs: Vec<ParamArc>,
}

impl ParamDigraph {
    pub fn new(vertex_count: usize) -> Self {
        ParamDigraph {
            vertex_count,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, intercept: Rational, slope: Rational) -> usize {
        assert!(
            tail < self.vertex_count && head < self.vertex_count,
            "arc ({tail}, {head}) out of range"
        );
        self.arcs.push(ParamArc {
            tail,
            head,
            weight: LinearFn::new(intercept, slope),
        });
        self.arcs.len() - 1
    }

    /// Arc indices are preserved.
    pub fn at(&self, lambda: &Rational) -> WeightedDigraph {
        let mut g = WeightedDigraph::new(self.vertex_count);
        for a in &self.arcs {
            g.add_arc(a.tail, a.head, a.weight.eval(lambda));
        }
        g
    }

    pub fn cycle_weight(&self, arcs: &[usize]) -> LinearFn {
        arcs.iter().fold(LinearFn::constant(rational::zero()), |acc, &a| {
            acc.add(&self.arcs[a].weight)
        })
    }

    pub fn is_cycle(&self, arcs: &[usize]) -> bool {
        !arcs.is_empty()
            && (0..arcs.len()).all(|i| self.arcs[arcs[i]].head == self.arcs[arcs[(i + 1) % arcs.len()]].tail)
    }

    /// Same graph under `λ ↦ −λ`.
    fn mirrored(&self) -> ParamDigraph {
        ParamDigraph {
            vertex_count: self.vertex_count,
            arcs: self
                .arcs
                .iter()
                .map(|a| ParamArc {
                    tail: a.tail,
                    head: a.head,
                    weight: a.weight.negate_parameter(),
                })
                .collect(),
        }
    }
}

/// Parametric cycle witness in JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub arcs: Vec<usize>,
    #[serde(serialize_with = "rational::serialize")]
    pub intercept: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub slope: Rational,
}

impl CycleReport {
    pub fn new(g: &ParamDigraph, arcs: &[usize]) -> Self {
        let w = g.cycle_weight(arcs);
        CycleReport {
            arcs: arcs.to_vec(),
            intercept: w.intercept,
            slope: w.slope,
        }
    }
}

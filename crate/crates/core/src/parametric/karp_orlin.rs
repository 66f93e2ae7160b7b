use super::ParamDigraph;
use crate::graph::{find_negative_cycle, WeightedDigraph};
use crate::rational::{self, Rational};
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KarpOrlinError {
    #[error("arc {arc} has slope {slope}; only 0 and -1 are allowed")]
    BadSlope { arc: usize, slope: String },
    #[error("a cycle of constant arcs is negative, so no λ is feasible: arcs {0:?}")]
    ConstantNegativeCycle(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    /// No cycle uses a sloped arc.
    Unbounded,
    /// `witness` has zero weight at `lambda` and its ratio attains the minimum.
    Finite { lambda: Rational, witness: Vec<usize> },
}

impl Threshold {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Threshold::Unbounded => None,
            Threshold::Finite { lambda, .. } => Some(lambda),
        }
    }
}

/// Largest `λ` without a negative cycle when every weight is `c` or `c − λ`,
/// i.e. the minimum over cycles of (intercept sum) / (number of sloped arcs).
///
/// Exact ratio search: start above every cycle ratio, then repeatedly jump
/// to the ratio of the negative cycle found by Bellman–Ford. Each jump
/// strictly lowers `λ`, and there are finitely many cycles.
pub fn karp_orlin_threshold(g: &ParamDigraph) -> Result<Threshold, KarpOrlinError> {
    let minus_one = -Rational::one();
    for (i, a) in g.arcs.iter().enumerate() {
        if !a.weight.slope.is_zero() && a.weight.slope != minus_one {
            return Err(KarpOrlinError::BadSlope {
                arc: i,
                slope: rational::format(&a.weight.slope),
            });
        }
    }
    let mut constant = WeightedDigraph::new(g.vertex_count);
    let mut origin = Vec::new();
    for (i, a) in g.arcs.iter().enumerate() {
        if a.weight.slope.is_zero() {
            constant.add_arc(a.tail, a.head, a.weight.intercept.clone());
            origin.push(i);
        }
    }
    if let Some(c) = find_negative_cycle(&constant) {
        return Err(KarpOrlinError::ConstantNegativeCycle(
            c.arcs.iter().map(|&k| origin[k]).collect(),
        ));
    }

    // Any cycle with a sloped arc has intercept sum below this start value.
    let mut lambda: Rational = g
        .arcs
        .iter()
        .map(|a| &a.weight.intercept)
        .filter(|c| c.is_positive())
        .sum::<Rational>()
        + Rational::one();
    let mut witness: Option<Vec<usize>> = None;
    while let Some(c) = find_negative_cycle(&g.at(&lambda)) {
        let w = g.cycle_weight(&c.arcs);
        let next = w.root().expect("negative cycle after constant check has a sloped arc");
        assert!(next < lambda, "ratio search must descend");
        lambda = next;
        witness = Some(c.arcs);
    }
    Ok(match witness {
        None => Threshold::Unbounded,
        Some(witness) => Threshold::Finite { lambda, witness },
    })
}

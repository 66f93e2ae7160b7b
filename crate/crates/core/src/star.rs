//! Minimum-dilation, non-contracting embedding of a finite metric into a
//! star metric, read off a parametric shortest-path graph.

use crate::graph::{bellman_ford, ShortestPaths};
use crate::parametric::{parametric_feasible_interval, Endpoint, FeasibleInterval, ParamDigraph};
use crate::rational::{self, Rational};
use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("D[{0}][{0}] is not zero")]
    NonZeroDiagonal(usize),
    #[error("D[{0}][{1}] differs from D[{1}][{0}]")]
    Asymmetric(usize, usize),
    #[error("D[{0}][{1}] is not positive")]
    NonPositive(usize, usize),
    #[error("triangle inequality fails: D[{p}][{r}] > D[{p}][{q}] + D[{q}][{r}]")]
    TriangleInequality { p: usize, q: usize, r: usize },
    #[error("at least two points are required")]
    TooSmall,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StarError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("hub distances contract the pair ({0}, {1})")]
    Contraction(usize, usize),
    #[error("hub distance {0} is negative")]
    NegativeHub(usize),
    #[error("parametric search did not return a finite lower endpoint")]
    NoLowerEndpoint,
    #[error("neither hub sign convention yields a valid embedding")]
    SignValidation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    d: Vec<Vec<Rational>>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare { row, len: r.len(), n });
            }
        }
        for p in 0..n {
            if rows[p][p] != rational::zero() {
                return Err(MetricError::NonZeroDiagonal(p));
            }
            for q in 0..n {
                if rows[p][q] != rows[q][p] {
                    return Err(MetricError::Asymmetric(p.min(q), p.max(q)));
                }
                if p != q && !rows[p][q].is_positive() {
                    return Err(MetricError::NonPositive(p.min(q), p.max(q)));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if rows[p][r] > &rows[p][q] + &rows[q][r] {
                        return Err(MetricError::TriangleInequality { p, q, r });
                    }
                }
            }
        }
        Ok(DistanceMatrix { d: rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, MetricError> {
        DistanceMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn get(&self, p: usize, q: usize) -> &Rational {
        &self.d[p][q]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.d
    }

    pub fn scaled(&self, c: &Rational) -> DistanceMatrix {
        DistanceMatrix {
            d: self.d.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarEmbedding {
    #[serde(serialize_with = "crate::rational::serialize_vec")]
    pub hub: Vec<Rational>,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub dilation: Rational,
    /// Arcs of the parametric graph on a cycle that vanishes at the dilation.
    pub witness: Vec<usize>,
}

/// Start vertex `0`; point `p` has upper copy `1 + p` and lower copy
/// `1 + n + p`.
pub fn upper(p: usize) -> usize {
    1 + p
}

pub fn lower(n: usize, p: usize) -> usize {
    1 + n + p
}

pub fn build_parametric_graph(d: &DistanceMatrix) -> ParamDigraph {
    let n = d.len();
    let mut g = ParamDigraph::new(2 * n + 1);
    let zero = rational::zero;
    for p in 0..n {
        g.add_arc(0, upper(p), zero(), zero());
        g.add_arc(lower(n, p), upper(p), zero(), zero());
    }
    for p in 0..n {
        for q in 0..n {
            if p != q {
                g.add_arc(lower(n, p), upper(q), -d.get(p, q), zero());
                g.add_arc(upper(p), lower(n, q), zero(), d.get(p, q).clone());
            }
        }
    }
    g
}

/// Largest `(H[p] + H[q]) / D[p][q]`; rejects negative or contracting `H`.
pub fn dilation(d: &DistanceMatrix, hub: &[Rational]) -> Result<Rational, StarError> {
    if let Some(p) = hub.iter().position(|h| h.is_negative()) {
        return Err(StarError::NegativeHub(p));
    }
    let mut best = rational::zero();
    for p in 0..d.len() {
        for q in p + 1..d.len() {
            let sum = &hub[p] + &hub[q];
            if &sum < d.get(p, q) {
                return Err(StarError::Contraction(p, q));
            }
            let r = sum / d.get(p, q);
            if r > best {
                best = r;
            }
        }
    }
    Ok(best)
}

pub fn optimal_star_embedding(d: &DistanceMatrix) -> Result<StarEmbedding, StarError> {
    let n = d.len();
    if n < 2 {
        return Err(MetricError::TooSmall.into());
    }
    let g = build_parametric_graph(d);
    let (delta, witness) = match parametric_feasible_interval(&g) {
        FeasibleInterval::Interval {
            lower: Endpoint::Finite { value, witness },
            ..
        } => (value, witness),
        _ => return Err(StarError::NoLowerEndpoint),
    };
    let dist = match bellman_ford(&g.at(&delta), 0) {
        ShortestPaths::Distances(x) => x,
        ShortestPaths::NegativeCycle(_) => return Err(StarError::NoLowerEndpoint),
    };
    let at = |v: usize| dist[v].clone().expect("every copy is reachable when n ≥ 2");
    let half = rational::ratio(1, 2);
    let forward: Vec<Rational> = (0..n).map(|p| (at(lower(n, p)) - at(upper(p))) * &half).collect();
    let backward: Vec<Rational> = forward.iter().map(|h| -h).collect();
    let valid = |h: &[Rational]| matches!(dilation(d, h), Ok(x) if x == delta);
    let hub = match (valid(&forward), valid(&backward)) {
        (true, false) => forward,
        (false, true) => backward,
        (true, true) if forward == backward => forward,
        _ => return Err(StarError::SignValidation),
    };
    Ok(StarEmbedding {
        hub,
        dilation: delta,
        witness,
    })
}

/// Shortest-path closure of a seeded random complete graph with integer
/// weights in `1..=20`.
pub fn random_metric(seed: u64, n: usize) -> DistanceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![vec![0i64; n]; n];
    for p in 0..n {
        for q in p + 1..n {
            let x = rng.gen_range(1..=20);
            w[p][q] = x;
            w[q][p] = x;
        }
    }
    for k in 0..n {
        for p in 0..n {
            for q in 0..n {
                w[p][q] = w[p][q].min(w[p][k] + w[k][q]);
            }
        }
    }
    DistanceMatrix::new(
        w.iter()
            .map(|r| r.iter().map(|&x| rational::int(x)).collect())
            .collect(),
    )
    .expect("shortest-path closures are metrics")
}

/// Unit 4-cycle with diagonals 2.
pub fn four_cycle_metric() -> DistanceMatrix {
    DistanceMatrix::from_ints(&[&[0, 1, 2, 1], &[1, 0, 1, 2], &[2, 1, 0, 1], &[1, 2, 1, 0]]).expect("metric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use num::Zero;

    #[test]
    fn graph_shape() {
        let d = DistanceMatrix::from_ints(&[&[0, 3], &[3, 0]]).unwrap();
        let g = build_parametric_graph(&d);
        assert_eq!(g.vertex_count, 5);
        let zero_arcs = g
            .arcs
            .iter()
            .filter(|a| a.weight.intercept.is_zero() && a.weight.slope.is_zero())
            .count();
        let negative = g.arcs.iter().filter(|a| a.weight.intercept.is_negative()).count();
        let sloped = g.arcs.iter().filter(|a| a.weight.slope.is_positive()).count();
        assert_eq!((zero_arcs, negative, sloped), (4, 2, 2));
    }

    #[test]
    fn rejects_non_metrics() {
        assert_eq!(
            DistanceMatrix::from_ints(&[&[0, 1], &[2, 0]]),
            Err(MetricError::Asymmetric(0, 1))
        );
        assert!(matches!(
            DistanceMatrix::from_ints(&[&[0, 1, 5], &[1, 0, 1], &[5, 1, 0]]),
            Err(MetricError::TriangleInequality { .. })
        ));
        assert_eq!(
            DistanceMatrix::from_ints(&[&[0, 0], &[0, 0]]),
            Err(MetricError::NonPositive(0, 1))
        );
    }

    #[test]
    fn three_points_are_stars() {
        let d = DistanceMatrix::from_ints(&[&[0, 3, 4], &[3, 0, 5], &[4, 5, 0]]).unwrap();
        let s = optimal_star_embedding(&d).unwrap();
        assert_eq!(s.dilation, int(1));
        assert_eq!(s.hub, vec![int(1), int(2), int(3)]);
    }

    #[test]
    fn uniform_and_cycle() {
        let u = DistanceMatrix::from_ints(&[&[0, 2, 2, 2], &[2, 0, 2, 2], &[2, 2, 0, 2], &[2, 2, 2, 0]]).unwrap();
        let s = optimal_star_embedding(&u).unwrap();
        assert_eq!(s.dilation, int(1));
        assert_eq!(s.hub, vec![int(1); 4]);
        let c = optimal_star_embedding(&four_cycle_metric()).unwrap();
        assert_eq!(c.dilation, int(2));
        assert_eq!(c.hub, vec![int(1); 4]);
    }

    #[test]
    fn dilation_checks() {
        let d = four_cycle_metric();
        let h = vec![int(1); 4];
        assert_eq!(dilation(&d, &h).unwrap(), int(2));
        let doubled: Vec<Rational> = h.iter().map(|x| x * int(2)).collect();
        assert_eq!(dilation(&d, &doubled).unwrap(), int(4));
        assert_eq!(dilation(&d, &vec![ratio(1, 2); 4]), Err(StarError::Contraction(0, 2)));
    }
}

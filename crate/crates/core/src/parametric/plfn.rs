use super::LinearFn;
use crate::rational::Rational;
use std::cmp::Ordering;

/// Lower envelope of lines; the empty envelope is `+∞`.
///
/// Pieces appear left to right with strictly decreasing slopes, and every
/// piece is the unique minimum on a nonempty open interval.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PlConcaveFn {
    pieces: Vec<LinearFn>,
}

/// `x` where two lines with `l1.slope > l2.slope` meet.
fn crossing(l1: &LinearFn, l2: &LinearFn) -> Rational {
    (&l2.intercept - &l1.intercept) / (&l1.slope - &l2.slope)
}

impl PlConcaveFn {
    pub fn infinity() -> Self {
        PlConcaveFn { pieces: Vec::new() }
    }

    pub fn linear(f: LinearFn) -> Self {
        PlConcaveFn { pieces: vec![f] }
    }

    pub fn from_lines<I: IntoIterator<Item = LinearFn>>(lines: I) -> Self {
        let mut lines: Vec<LinearFn> = lines.into_iter().collect();
        lines.sort_by(|a, b| b.slope.cmp(&a.slope).then_with(|| a.intercept.cmp(&b.intercept)));
        lines.dedup_by(|later, earlier| later.slope == earlier.slope);
        let mut hull: Vec<LinearFn> = Vec::with_capacity(lines.len());
        for line in lines {
            while hull.len() >= 2 {
                let k = hull.len();
                if crossing(&hull[k - 2], &hull[k - 1]) >= crossing(&hull[k - 1], &line) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(line);
        }
        PlConcaveFn { pieces: hull }
    }

    pub fn pieces(&self) -> &[LinearFn] {
        &self.pieces
    }

    pub fn is_infinite(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `None` stands for `+∞`.
    pub fn eval(&self, lambda: &Rational) -> Option<Rational> {
        self.pieces.iter().map(|p| p.eval(lambda)).min()
    }

    /// Strictly increasing breakpoints; one fewer than the piece count.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.pieces.windows(2).map(|w| crossing(&w[0], &w[1])).collect()
    }

    pub fn min(&self, other: &PlConcaveFn) -> PlConcaveFn {
        PlConcaveFn::from_lines(self.pieces.iter().chain(&other.pieces).cloned())
    }

    pub fn add(&self, other: &PlConcaveFn) -> PlConcaveFn {
        if self.is_infinite() || other.is_infinite() {
            return PlConcaveFn::infinity();
        }
        // Sum the pieces that are simultaneously active, sweeping left to right.
        let (bf, bg) = (self.breakpoints(), other.breakpoints());
        let (mut i, mut j) = (0, 0);
        let mut lines = vec![self.pieces[0].add(&other.pieces[0])];
        while i < bf.len() || j < bg.len() {
            let order = match (bf.get(i), bg.get(j)) {
                (Some(x), Some(y)) => x.cmp(y),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match order {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
            lines.push(self.pieces[i].add(&other.pieces[j]));
        }
        PlConcaveFn::from_lines(lines)
    }

    /// Pieces active somewhere in the open interval `(lo, hi)`; `None`
    /// bounds are infinite.
    pub fn restrict(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> PlConcaveFn {
        let bps = self.breakpoints();
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let starts_before_hi = match (i.checked_sub(1).map(|k| &bps[k]), hi) {
                    (Some(left), Some(h)) => left < h,
                    _ => true,
                };
                let ends_after_lo = match (bps.get(*i), lo) {
                    (Some(right), Some(l)) => right > l,
                    _ => true,
                };
                starts_before_hi && ends_after_lo
            })
            .map(|(_, p)| p.clone())
            .collect();
        PlConcaveFn { pieces }
    }

    /// Slopes strictly decreasing and breakpoints strictly increasing.
    pub fn is_concave(&self) -> bool {
        let slopes_ok = self.pieces.windows(2).all(|w| w[0].slope > w[1].slope);
        let bps = self.breakpoints();
        slopes_ok && bps.windows(2).all(|w| w[0] < w[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn lf(b: i64, s: i64) -> LinearFn {
        LinearFn::new(int(b), int(s))
    }

    #[test]
    fn envelope_drops_dominated_lines() {
        let f = PlConcaveFn::from_lines([lf(0, 1), lf(5, 0), lf(0, -1), lf(3, 0)]);
        // min(λ, 3, -λ) has two pieces: λ then -λ, meeting at 0; 3 is never minimal.
        assert_eq!(f.pieces(), &[lf(0, 1), lf(0, -1)]);
        assert_eq!(f.breakpoints(), vec![int(0)]);
        let g = PlConcaveFn::from_lines([lf(0, 1), lf(1, 0), lf(0, -1)]);
        assert_eq!(g.pieces().len(), 2);
        let h = PlConcaveFn::from_lines([lf(0, 1), lf(-1, 0), lf(0, -1)]);
        assert_eq!(h.breakpoints(), vec![int(-1), int(1)]);
    }

    #[test]
    fn sum_of_pieces() {
        let f = PlConcaveFn::linear(lf(2, 0));
        let g = PlConcaveFn::linear(lf(1, 3));
        assert_eq!(f.add(&g).pieces(), &[lf(3, 3)]);
        assert!(f.add(&PlConcaveFn::infinity()).is_infinite());
    }

    #[test]
    fn restrict_keeps_active_pieces() {
        let h = PlConcaveFn::from_lines([lf(0, 1), lf(-1, 0), lf(0, -1)]);
        let mid = h.restrict(Some(&int(-1)), Some(&int(1)));
        assert_eq!(mid.pieces(), &[lf(-1, 0)]);
        let left = h.restrict(None, Some(&ratio(-1, 2)));
        assert_eq!(left.pieces().len(), 2);
    }

    fn small_lines() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-8i64..=8, -4i64..=4), 0..6)
    }

    fn build(v: &[(i64, i64)]) -> PlConcaveFn {
        PlConcaveFn::from_lines(v.iter().map(|&(b, s)| lf(b, s)))
    }

    proptest! {
        #[test]
        fn operations_match_pointwise(a in small_lines(), b in small_lines(), x in -40i64..=40) {
            let (f, g) = (build(&a), build(&b));
            let lam = ratio(x, 4);
            prop_assert!(f.is_concave() && g.is_concave());
            let brute = |v: &[(i64, i64)]| v.iter().map(|&(c, s)| lf(c, s).eval(&lam)).min();
            prop_assert_eq!(f.eval(&lam), brute(&a));
            let sum = f.add(&g);
            prop_assert!(sum.is_concave());
            let expect = match (f.eval(&lam), g.eval(&lam)) {
                (Some(p), Some(q)) => Some(p + q),
                _ => None,
            };
            prop_assert_eq!(sum.eval(&lam), expect);
            let m = f.min(&g);
            prop_assert!(m.is_concave());
            prop_assert_eq!(m.eval(&lam), [f.eval(&lam), g.eval(&lam)].into_iter().flatten().min());
        }
    }
}

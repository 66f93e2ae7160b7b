//! Single cyclic triangle strip for a closed surface: a perfect matching
//! of the cubic dual leaves a cycle cover, which local moves and
//! bisections merge into one cycle.

mod cover;
mod mesh;

pub use cover::{
    bisect_and_merge, bisect_pair, cycle_cover_from_matching, dual_graph, dual_perfect_matching, merge_move,
    CoverError, CycleCover, DualGraph,
};
pub use mesh::{icosahedron, octahedron, sphere_like, tetrahedron, MeshError, TriMesh, Vertex3};

use crate::rational::{self, Rational};
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StripError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("the dual graph has no perfect matching")]
    NoPerfectMatching,
    #[error("triangle count grew from {initial} to {last}, beyond a factor of 3/2")]
    GrowthExceeded { initial: usize, last: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StripStats {
    pub initial_triangles: usize,
    pub final_triangles: usize,
    pub added_triangles: usize,
    pub growth_ratio: f64,
    pub initial_cycles: usize,
    pub merge_moves: usize,
    pub bisections: usize,
}

#[derive(Clone, Debug)]
pub struct StripResult {
    /// The input mesh after bisections.
    pub mesh: TriMesh,
    /// Triangle ids of `mesh` in cycle order.
    pub strip: Vec<usize>,
    pub stats: StripStats,
}

/// Applies merge moves at vertices in index order until a full pass finds none.
fn exhaust_merges(m: &TriMesh, cover: &mut CycleCover) -> Result<usize, CoverError> {
    let mut moves = 0;
    loop {
        let mut any = false;
        for v in 0..m.vertex_count() {
            if cover.cycle_count() == 1 {
                return Ok(moves);
            }
            if let Some(next) = merge_move(m, cover, v)? {
                *cover = next;
                moves += 1;
                any = true;
            }
        }
        if !any {
            return Ok(moves);
        }
    }
}

/// Lexicographically least pair `t1 < t2` of adjacent triangles on
/// different cycles.
fn least_cross_pair(m: &TriMesh, cover: &CycleCover) -> Option<(usize, usize)> {
    let cycle = cover.cycle_of(m.triangle_count());
    (0..m.triangle_count())
        .flat_map(|t| m.triangle_edges(t).into_iter().map(move |e| (t, m.across(t, e))))
        .filter(|&(t, u)| t < u && cycle[t] != cycle[u])
        .min()
}

pub fn single_strip(input: &TriMesh) -> Result<StripResult, StripError> {
    dual_graph(input)?;
    let pm = dual_perfect_matching(input).ok_or(StripError::NoPerfectMatching)?;
    let mut mesh = input.clone();
    let mut cover = cycle_cover_from_matching(&mesh, &pm)?;
    let initial_cycles = cover.cycle_count();
    let mut merge_moves = 0;
    let mut bisections = 0;
    loop {
        merge_moves += exhaust_merges(&mesh, &mut cover)?;
        if cfg!(debug_assertions) {
            cover.check(&mesh)?;
        }
        if cover.cycle_count() == 1 {
            break;
        }
        let (t1, t2) = least_cross_pair(&mesh, &cover).expect("a connected mesh with two cycles has a cross pair");
        let before = cover.cycle_count();
        let (next_mesh, next_cover) = bisect_and_merge(&mesh, &cover, t1, t2)?;
        assert!(next_cover.cycle_count() < before, "each bisection merges");
        mesh = next_mesh;
        cover = next_cover;
        bisections += 1;
        merge_moves += 1;
    }
    let initial = input.triangle_count();
    let last = mesh.triangle_count();
    let growth = rational::ratio(last as i64, initial as i64);
    if growth > rational::ratio(3, 2) {
        return Err(StripError::GrowthExceeded { initial, last });
    }
    let strip = cover.cycles.pop().expect("one cycle");
    Ok(StripResult {
        mesh,
        strip,
        stats: StripStats {
            initial_triangles: initial,
            final_triangles: last,
            added_triangles: last - initial,
            growth_ratio: rational::to_f64(&growth),
            initial_cycles,
            merge_moves,
            bisections,
        },
    })
}

/// Every triangle once, and cyclically consecutive entries share an edge.
pub fn verify_strip(m: &TriMesh, strip: &[usize]) -> bool {
    let mut seen = vec![false; m.triangle_count()];
    for &t in strip {
        if t >= seen.len() || std::mem::replace(&mut seen[t], true) {
            return false;
        }
    }
    seen.iter().all(|&s| s)
        && (0..strip.len()).all(|i| {
            let (t, u) = (strip[i], strip[(i + 1) % strip.len()]);
            m.triangle_edges(t).iter().any(|&e| m.across(t, e) == u)
        })
}

/// `final / initial` as an exact ratio.
pub fn growth(stats: &StripStats) -> Rational {
    rational::ratio(stats.final_triangles as i64, stats.initial_triangles as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_strips() {
        let t = single_strip(&tetrahedron()).unwrap();
        assert_eq!(t.strip.len(), 4);
        assert_eq!(t.stats.added_triangles, 0);
        let o = single_strip(&octahedron()).unwrap();
        assert!(o.stats.added_triangles <= 4);
        assert!(verify_strip(&o.mesh, &o.strip));
        let i = single_strip(&icosahedron()).unwrap();
        assert!(i.strip.len() >= 20);
        assert!(verify_strip(&i.mesh, &i.strip));
    }

    #[test]
    fn sphere_like_strips() {
        for seed in 0..4 {
            let m = sphere_like(seed, 120);
            let r = single_strip(&m).unwrap();
            assert!(verify_strip(&r.mesh, &r.strip));
            assert!(r.stats.growth_ratio <= 1.5);
            assert_eq!(r.mesh.euler_characteristic(), 2);
        }
    }
}

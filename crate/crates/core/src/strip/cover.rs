use super::mesh::{MeshError, TriMesh};
use crate::graph::perfect_matching_general;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("matching has {0} entries but the dual has {1} edges")]
    WrongLength(usize, usize),
    #[error("triangle {triangle} has {matched} matched dual edges, expected 1")]
    NotPerfect { triangle: usize, matched: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("triangles {0} and {1} do not share an edge")]
    NotAdjacent(usize, usize),
    #[error("cycles do not partition the triangles")]
    BadCycles,
    #[error("dual edge {0} is a bridge")]
    Bridge(usize),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// The dual multigraph: dual edge ids are mesh edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn degree(&self, t: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == t || b == t).count()
    }

    /// Dual edges whose removal disconnects the graph.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut bridges = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if order[root] != usize::MAX {
                continue;
            }
            // Iterative DFS frames: (vertex, edge used to enter, next index).
            let mut stack = vec![(root, usize::MAX, 0usize)];
            order[root] = counter;
            low[root] = counter;
            counter += 1;
            while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let (w, e) = adj[v][*next];
                    *next += 1;
                    if e == via {
                        continue;
                    }
                    if order[w] == usize::MAX {
                        order[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(order[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > order[parent] {
                            bridges.push(via);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }
}

pub fn dual_graph(m: &TriMesh) -> Result<DualGraph, CoverError> {
    let g = DualGraph {
        vertex_count: m.triangle_count(),
        edges: (0..m.edges().len())
            .map(|e| {
                let [a, b] = m.edge_triangles(e);
                (a.min(b), a.max(b))
            })
            .collect(),
    };
    if let Some(&e) = g.bridges().first() {
        return Err(CoverError::Bridge(e));
    }
    Ok(g)
}

/// Perfect matching of the dual as a set of dual edge ids.
pub fn dual_perfect_matching(m: &TriMesh) -> Option<Vec<usize>> {
    let mut first: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in 0..m.edges().len() {
        let [a, b] = m.edge_triangles(e);
        first.entry((a.min(b), a.max(b))).or_insert(e);
    }
    let simple: Vec<(usize, usize)> = first.keys().copied().collect();
    let pm = perfect_matching_general(m.triangle_count(), &simple)?;
    let mut out: Vec<usize> = pm.pairs.iter().map(|p| first[p]).collect();
    out.sort_unstable();
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    /// Per dual (mesh) edge.
    pub matched: Vec<bool>,
    /// Triangle sequences; consecutive entries share an unmatched edge.
    pub cycles: Vec<Vec<usize>>,
}

impl CycleCover {
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Cycle index of every triangle.
    pub fn cycle_of(&self, triangle_count: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; triangle_count];
        for (c, cyc) in self.cycles.iter().enumerate() {
            for &t in cyc {
                out[t] = c;
            }
        }
        out
    }

    /// Perfect matching, 2-factor complement and cycles consistent with it.
    pub fn check(&self, m: &TriMesh) -> Result<(), CoverError> {
        check_perfect(m, &self.matched)?;
        let mut seen = vec![false; m.triangle_count()];
        for cyc in &self.cycles {
            for (i, &t) in cyc.iter().enumerate() {
                if std::mem::replace(&mut seen[t], true) {
                    return Err(CoverError::BadCycles);
                }
                let u = cyc[(i + 1) % cyc.len()];
                let linked = m
                    .triangle_edges(t)
                    .iter()
                    .any(|&e| !self.matched[e] && m.across(t, e) == u);
                if !linked {
                    return Err(CoverError::BadCycles);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(CoverError::BadCycles)
        }
    }
}

fn check_perfect(m: &TriMesh, matched: &[bool]) -> Result<(), CoverError> {
    if matched.len() != m.edges().len() {
        return Err(CoverError::WrongLength(matched.len(), m.edges().len()));
    }
    for t in 0..m.triangle_count() {
        let k = m.triangle_edges(t).iter().filter(|&&e| matched[e]).count();
        if k != 1 {
            return Err(CoverError::NotPerfect {
                triangle: t,
                matched: k,
            });
        }
    }
    Ok(())
}

/// Walks the unmatched edges; each cycle starts at its lowest triangle and
/// leaves through that triangle's first unmatched edge.
fn trace_cycles(m: &TriMesh, matched: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; m.triangle_count()];
    let mut cycles = Vec::new();
    for start in 0..m.triangle_count() {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut via = *m
            .triangle_edges(start)
            .iter()
            .find(|&&e| !matched[e])
            .expect("two unmatched edges per triangle");
        let mut cur = m.across(start, via);
        while cur != start {
            seen[cur] = true;
            cyc.push(cur);
            via = *m
                .triangle_edges(cur)
                .iter()
                .find(|&&e| !matched[e] && e != via)
                .expect("two unmatched edges per triangle");
            cur = m.across(cur, via);
        }
        cycles.push(cyc);
    }
    cycles
}

pub fn cycle_cover_from_matching(m: &TriMesh, pm: &[usize]) -> Result<CycleCover, CoverError> {
    let mut matched = vec![false; m.edges().len()];
    for &e in pm {
        if e >= matched.len() {
            return Err(CoverError::WrongLength(e, matched.len()));
        }
        matched[e] = true;
    }
    check_perfect(m, &matched)?;
    let cycles = trace_cycles(m, &matched);
    Ok(CycleCover { matched, cycles })
}

/// Swaps matched and unmatched edges around `v` when every triangle at `v`
/// is matched through an edge at `v`; kept only if cycles merge.
pub fn merge_move(m: &TriMesh, cover: &CycleCover, v: usize) -> Result<Option<CycleCover>, CoverError> {
    if v >= m.vertex_count() {
        return Err(CoverError::VertexOutOfRange(v));
    }
    let ring = m.ring_edges(v);
    for t in m.fan(v) {
        let tri = m.triangles()[t];
        let i = tri.iter().position(|&x| x == v).expect("v on its fan");
        let opposite = m.edge_id(tri[(i + 1) % 3], tri[(i + 2) % 3]).expect("edge exists");
        if cover.matched[opposite] {
            return Ok(None);
        }
    }
    let mut matched = cover.matched.clone();
    for &e in &ring {
        matched[e] = !matched[e];
    }
    debug_assert!(check_perfect(m, &matched).is_ok());
    let cycles = trace_cycles(m, &matched);
    Ok((cycles.len() < cover.cycles.len()).then_some(CycleCover { matched, cycles }))
}

/// Lowest-id edge shared by `t1` and `t2`.
fn shared_edge(m: &TriMesh, t1: usize, t2: usize) -> Result<usize, CoverError> {
    if t1 == t2 || t1 >= m.triangle_count() || t2 >= m.triangle_count() {
        return Err(CoverError::NotAdjacent(t1, t2));
    }
    let mut shared: Vec<usize> = m
        .triangle_edges(t1)
        .into_iter()
        .filter(|&e| m.across(t1, e) == t2)
        .collect();
    shared.sort_unstable();
    shared.first().copied().ok_or(CoverError::NotAdjacent(t1, t2))
}

/// Splits `t1` and `t2` at the midpoint of edge `e`. The two halves keep
/// the old ids; the new triangles are appended. Returns the new vertex.
fn split_edge(m: &TriMesh, t1: usize, t2: usize, e: usize) -> (TriMesh, usize) {
    let (a0, b0) = m.edges()[e];
    let rotate = |t: usize, from: usize, to: usize| {
        let tri = m.triangles()[t];
        let i = (0..3)
            .find(|&i| tri[i] == from && tri[(i + 1) % 3] == to)
            .expect("directed edge on triangle");
        [tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]]
    };
    let (a, b) = if m.triangles()[t1]
        .iter()
        .enumerate()
        .any(|(i, &x)| x == a0 && m.triangles()[t1][(i + 1) % 3] == b0)
    {
        (a0, b0)
    } else {
        (b0, a0)
    };
    let [_, _, c] = rotate(t1, a, b);
    let [_, _, d] = rotate(t2, b, a);
    let mut vertices = m.vertices().to_vec();
    let (pa, pb) = (&vertices[a], &vertices[b]);
    let half = crate::rational::ratio(1, 2);
    let mid = [0, 1, 2].map(|k| (&pa[k] + &pb[k]) * &half);
    let x = vertices.len();
    vertices.push(mid);
    let mut triangles = m.triangles().to_vec();
    triangles[t1] = [a, x, c];
    triangles[t2] = [b, x, d];
    triangles.push([x, b, c]);
    triangles.push([x, a, d]);
    (
        TriMesh::new(vertices, triangles).expect("splitting preserves closed manifolds"),
        x,
    )
}

pub fn bisect_pair(m: &TriMesh, t1: usize, t2: usize) -> Result<TriMesh, CoverError> {
    let e = shared_edge(m, t1, t2)?;
    Ok(split_edge(m, t1, t2, e).0)
}

/// Bisects two triangles of different cycles and applies the move at the
/// new vertex, which merges their cycles.
pub fn bisect_and_merge(
    m: &TriMesh,
    cover: &CycleCover,
    t1: usize,
    t2: usize,
) -> Result<(TriMesh, CycleCover), CoverError> {
    let e = shared_edge(m, t1, t2)?;
    assert!(
        cover.matched[e],
        "triangles of different cycles meet across a matched edge"
    );
    let (a, b) = m.edges()[e];
    let (mesh, x) = split_edge(m, t1, t2, e);
    let mut pairs: Vec<(usize, usize)> = m
        .edges()
        .iter()
        .zip(&cover.matched)
        .filter(|&(&p, &on)| on && p != (a, b))
        .map(|(&p, _)| p)
        .collect();
    pairs.push((a, x));
    pairs.push((b, x));
    let pm: Vec<usize> = pairs
        .iter()
        .map(|&(p, q)| mesh.edge_id(p, q).expect("edge survives the split"))
        .collect();
    let split_cover = cycle_cover_from_matching(&mesh, &pm)?;
    debug_assert_eq!(split_cover.cycle_count(), cover.cycle_count());
    let merged =
        merge_move(&mesh, &split_cover, x)?.expect("the move at a fresh bisection vertex always merges two cycles");
    Ok((mesh, merged))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::mesh::{octahedron, tetrahedron};

    fn equator_cover() -> (TriMesh, CycleCover) {
        let m = octahedron();
        let pm: Vec<usize> = [(0, 2), (1, 2), (1, 3), (0, 3)]
            .iter()
            .map(|&(a, b)| m.edge_id(a, b).unwrap())
            .collect();
        let c = cycle_cover_from_matching(&m, &pm).unwrap();
        (m, c)
    }

    #[test]
    fn duals() {
        let k4 = dual_graph(&tetrahedron()).unwrap();
        assert_eq!(k4.edges.len(), 6);
        assert!((0..4).all(|t| k4.degree(t) == 3));
        let cube = dual_graph(&octahedron()).unwrap();
        assert_eq!((cube.vertex_count, cube.edges.len()), (8, 12));
    }

    #[test]
    fn tetrahedron_cover_is_one_cycle() {
        let m = tetrahedron();
        let pm = vec![m.edge_id(0, 1).unwrap(), m.edge_id(2, 3).unwrap()];
        let c = cycle_cover_from_matching(&m, &pm).unwrap();
        assert_eq!(c.cycle_count(), 1);
        assert_eq!(c.cycles[0].len(), 4);
        c.check(&m).unwrap();
        assert!(matches!(
            cycle_cover_from_matching(&m, &pm[..1]),
            Err(CoverError::NotPerfect { .. })
        ));
    }

    #[test]
    fn octahedron_merge() {
        let (m, c) = equator_cover();
        assert_eq!(c.cycle_count(), 2);
        assert!(c.cycles.iter().all(|x| x.len() == 4));
        let merged = merge_move(&m, &c, 0).unwrap().unwrap();
        assert_eq!(merged.cycle_count(), 1);
        merged.check(&m).unwrap();
        // The poles' rings are fully unmatched.
        assert_eq!(merge_move(&m, &c, 4).unwrap(), None);
        for v in 0..6 {
            assert_eq!(merge_move(&m, &merged, v).unwrap(), None);
        }
        assert_eq!(merge_move(&m, &c, 6), Err(CoverError::VertexOutOfRange(6)));
    }

    #[test]
    fn bisection() {
        let m = tetrahedron();
        let b = bisect_pair(&m, 0, 1).unwrap();
        assert_eq!(b.triangle_count(), 6);
        assert_eq!(b.vertex_count(), 5);
        assert_eq!(b.fan(4).len(), 4);
        assert_eq!(b.euler_characteristic(), 2);
        assert_eq!(bisect_pair(&m, 2, 2), Err(CoverError::NotAdjacent(2, 2)));
    }
}

use crate::rational::{self, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type Vertex3 = [Rational; 3];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("mesh has no triangles")]
    Empty,
    #[error("triangle {0} references a missing vertex")]
    VertexOutOfRange(usize),
    #[error("triangle {0} repeats a vertex")]
    DegenerateTriangle(usize),
    #[error("edge {0}-{1} borders only one triangle")]
    Boundary(usize, usize),
    #[error("edge {0}-{1} borders more than two triangles")]
    NonManifoldEdge(usize, usize),
    #[error("edge {0}-{1} is traversed twice in the same direction")]
    NotOrientable(usize, usize),
    #[error("vertex {0} is used by no triangle")]
    UnusedVertex(usize),
    #[error("triangles around vertex {0} do not form a single fan")]
    NonManifoldVertex(usize),
    #[error("mesh is not connected")]
    Disconnected,
}

/// Closed, connected, consistently oriented triangle mesh.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMesh {
    vertices: Vec<Vertex3>,
    triangles: Vec<[usize; 3]>,
    /// Sorted `(a, b)` with `a < b`.
    edges: Vec<(usize, usize)>,
    edge_triangles: Vec<[usize; 2]>,
    /// Ids of edges `(t0,t1)`, `(t1,t2)`, `(t2,t0)`.
    triangle_edges: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(vertices: Vec<Vertex3>, triangles: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        if triangles.is_empty() {
            return Err(MeshError::Empty);
        }
        let mut directed: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut incident: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= vertices.len()) {
                return Err(MeshError::VertexOutOfRange(t));
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(MeshError::DegenerateTriangle(t));
            }
            for i in 0..3 {
                let (a, b) = (tri[i], tri[(i + 1) % 3]);
                if !directed.insert((a, b)) {
                    return Err(MeshError::NotOrientable(a.min(b), a.max(b)));
                }
                incident.entry((a.min(b), a.max(b))).or_default().push(t);
            }
        }
        let mut edges = Vec::with_capacity(incident.len());
        let mut edge_triangles = Vec::with_capacity(incident.len());
        for (&(a, b), ts) in &incident {
            match ts.len() {
                1 => return Err(MeshError::Boundary(a, b)),
                2 => {}
                _ => return Err(MeshError::NonManifoldEdge(a, b)),
            }
            edges.push((a, b));
            edge_triangles.push([ts[0], ts[1]]);
        }
        let id = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).expect("edge was recorded");
        let triangle_edges: Vec<[usize; 3]> = triangles
            .iter()
            .map(|t| [id(t[0], t[1]), id(t[1], t[2]), id(t[2], t[0])])
            .collect();
        let mesh = TriMesh {
            vertices,
            triangles,
            edges,
            edge_triangles,
            triangle_edges,
        };
        mesh.check_vertex_fans()?;
        mesh.check_connected()?;
        Ok(mesh)
    }

    fn check_vertex_fans(&self) -> Result<(), MeshError> {
        let mut around: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            for &v in tri {
                around[v].push(t);
            }
        }
        for (v, ts) in around.iter().enumerate() {
            if ts.is_empty() {
                return Err(MeshError::UnusedVertex(v));
            }
            if self.fan(v).len() != ts.len() {
                return Err(MeshError::NonManifoldVertex(v));
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<(), MeshError> {
        let mut seen = vec![false; self.triangles.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for &e in &self.triangle_edges[t] {
                let u = self.across(t, e);
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(MeshError::Disconnected)
        }
    }

    pub fn vertices(&self) -> &[Vertex3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_triangles(&self, e: usize) -> [usize; 2] {
        self.edge_triangles[e]
    }

    pub fn triangle_edges(&self, t: usize) -> [usize; 3] {
        self.triangle_edges[t]
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// The triangle on the other side of edge `e` from `t`.
    pub fn across(&self, t: usize, e: usize) -> usize {
        let [x, y] = self.edge_triangles[e];
        if x == t {
            y
        } else {
            x
        }
    }

    /// Triangles around `v` in rotation order, starting from the lowest.
    pub fn fan(&self, v: usize) -> Vec<usize> {
        let Some(start) = self.triangles.iter().position(|t| t.contains(&v)) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut cur = start;
        loop {
            // Leave through the edge that enters v in cur's orientation.
            let tri = self.triangles[cur];
            let i = tri.iter().position(|&x| x == v).expect("v on triangle");
            let prev = tri[(i + 2) % 3];
            let e = self.edge_id(prev, v).expect("edge exists");
            cur = self.across(cur, e);
            if cur == start {
                return out;
            }
            if out.contains(&cur) {
                return out;
            }
            out.push(cur);
        }
    }

    /// Edge ids incident to `v`.
    pub fn ring_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

fn v3(x: i64, y: i64, z: i64) -> Vertex3 {
    [rational::int(x), rational::int(y), rational::int(z)]
}

pub fn tetrahedron() -> TriMesh {
    TriMesh::new(
        vec![v3(1, 1, 1), v3(1, -1, -1), v3(-1, 1, -1), v3(-1, -1, 1)],
        vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]],
    )
    .expect("valid mesh")
}

pub fn octahedron() -> TriMesh {
    TriMesh::new(
        vec![
            v3(1, 0, 0),
            v3(-1, 0, 0),
            v3(0, 1, 0),
            v3(0, -1, 0),
            v3(0, 0, 1),
            v3(0, 0, -1),
        ],
        vec![
            [0, 2, 4],
            [2, 1, 4],
            [1, 3, 4],
            [3, 0, 4],
            [2, 0, 5],
            [1, 2, 5],
            [3, 1, 5],
            [0, 3, 5],
        ],
    )
    .expect("valid mesh")
}

pub fn icosahedron() -> TriMesh {
    let phi = rational::ratio(1618, 1000);
    let one = rational::one();
    let zero = rational::zero();
    let mut vs: Vec<Vertex3> = Vec::new();
    for (x, y) in [(-1, 1), (1, 1), (-1, -1), (1, -1)] {
        vs.push([&one * rational::int(x), &phi * rational::int(y), zero.clone()]);
    }
    for (y, z) in [(-1, 1), (1, 1), (-1, -1), (1, -1)] {
        vs.push([zero.clone(), &one * rational::int(y), &phi * rational::int(z)]);
    }
    for (x, z) in [(1, -1), (1, 1), (-1, -1), (-1, 1)] {
        vs.push([&phi * rational::int(x), zero.clone(), &one * rational::int(z)]);
    }
    TriMesh::new(
        vs,
        vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ],
    )
    .expect("valid mesh")
}

/// Projects the mean of `pts` onto the unit sphere, rounded to thousandths.
fn spherical_mean(pts: &[&Vertex3]) -> Vertex3 {
    let mut c = [0.0f64; 3];
    for p in pts {
        for k in 0..3 {
            c[k] += rational::to_f64(&p[k]) / pts.len() as f64;
        }
    }
    let norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt().max(1e-9);
    c.map(|x| rational::ratio((x / norm * 1000.0).round() as i64, 1000))
}

/// Topological sphere with exactly `target` triangles (rounded up to even,
/// at least 8), grown from an octahedron by seeded face splits, edge
/// splits and edge flips.
pub fn sphere_like(seed: u64, target: usize) -> TriMesh {
    let target = target.max(8).div_ceil(2) * 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = octahedron();
    let mut vs: Vec<Vertex3> = base.vertices.clone();
    let mut ts: Vec<[usize; 3]> = base.triangles.clone();
    while ts.len() < target {
        let t = rng.gen_range(0..ts.len());
        let [a, b, c] = ts[t];
        if rng.gen_bool(0.5) {
            let m = vs.len();
            vs.push(spherical_mean(&[&vs[a], &vs[b], &vs[c]]));
            ts[t] = [a, b, m];
            ts.push([b, c, m]);
            ts.push([c, a, m]);
        } else {
            // Split edge ab shared with the triangle (b, a, d).
            let u = ts
                .iter()
                .position(|x| (0..3).any(|i| x[i] == b && x[(i + 1) % 3] == a))
                .expect("closed mesh");
            let i = (0..3).find(|&i| ts[u][i] == b).unwrap();
            let d = ts[u][(i + 2) % 3];
            let m = vs.len();
            vs.push(spherical_mean(&[&vs[a], &vs[b]]));
            ts[t] = [a, m, c];
            ts.push([m, b, c]);
            ts[u] = [b, m, d];
            ts.push([m, a, d]);
        }
        for _ in 0..2 {
            flip_random_edge(&mut ts, vs.len(), &mut rng);
        }
    }
    TriMesh::new(vs, ts).expect("generator preserves closed manifolds")
}

fn flip_random_edge(ts: &mut [[usize; 3]], vertex_count: usize, rng: &mut ChaCha8Rng) {
    let t = rng.gen_range(0..ts.len());
    let k = rng.gen_range(0..3);
    let (a, b, c) = (ts[t][k], ts[t][(k + 1) % 3], ts[t][(k + 2) % 3]);
    let Some(u) = ts.iter().position(|x| (0..3).any(|i| x[i] == b && x[(i + 1) % 3] == a)) else {
        return;
    };
    let i = (0..3).find(|&i| ts[u][i] == b).unwrap();
    let d = ts[u][(i + 2) % 3];
    let mut degree = vec![0usize; vertex_count];
    let mut has_cd = false;
    for x in ts.iter() {
        for j in 0..3 {
            degree[x[j]] += 1;
            let (p, q) = (x[j], x[(j + 1) % 3]);
            if (p, q) == (c, d) || (p, q) == (d, c) {
                has_cd = true;
            }
        }
    }
    if c == d || has_cd || degree[a] <= 3 || degree[b] <= 3 {
        return;
    }
    ts[t] = [c, a, d];
    ts[u] = [d, b, c];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_meshes_are_spheres() {
        for m in [tetrahedron(), octahedron(), icosahedron()] {
            assert_eq!(m.euler_characteristic(), 2);
        }
        assert_eq!(octahedron().edges().len(), 12);
        assert_eq!(icosahedron().triangle_count(), 20);
        assert_eq!(octahedron().fan(4).len(), 4);
    }

    #[test]
    fn open_and_broken_meshes_are_rejected() {
        let tri = vec![v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0)];
        assert_eq!(
            TriMesh::new(tri.clone(), vec![[0, 1, 2]]),
            Err(MeshError::Boundary(0, 1))
        );
        assert_eq!(
            TriMesh::new(tri.clone(), vec![[0, 1, 2], [0, 1, 2]]),
            Err(MeshError::NotOrientable(0, 1))
        );
        assert_eq!(
            TriMesh::new(tri, vec![[0, 0, 2]]),
            Err(MeshError::DegenerateTriangle(0))
        );
    }

    #[test]
    fn sphere_like_hits_target() {
        for (seed, target) in [(1, 40), (2, 101), (3, 500)] {
            let m = sphere_like(seed, target);
            assert_eq!(m.triangle_count(), target.div_ceil(2) * 2);
            assert_eq!(m.euler_characteristic(), 2);
        }
    }
}

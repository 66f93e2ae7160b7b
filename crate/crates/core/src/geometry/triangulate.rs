use super::{cross, orient, Point, Polygon};
use crate::rational::Rational;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("polygon has {0} hole(s); triangulation requires a hole-free polygon")]
    HasHoles(usize),
    #[error("no ear found among {remaining} remaining vertices")]
    NoEar { remaining: usize },
}

/// Triangles as counterclockwise global vertex-index triples, plus the weak
/// dual: triangles are adjacent when they share a diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    pub dual: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn dual_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.dual.iter().enumerate() {
            for &b in nbrs {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Connected and `faces - 1` edges.
    pub fn dual_is_tree(&self) -> bool {
        face_adjacency_is_tree(&self.dual)
    }
}

pub(crate) fn face_adjacency_is_tree(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let edge_ends: usize = adj.iter().map(|a| a.len()).sum();
    if edge_ends != 2 * (n - 1) {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Adjacency of faces (index lists) that share an unordered vertex pair.
pub(crate) fn shared_edge_adjacency(faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut owners: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (f, face) in faces.iter().enumerate() {
        let k = face.len();
        for i in 0..k {
            let (a, b) = (face[i], face[(i + 1) % k]);
            owners.entry((a.min(b), a.max(b))).or_default().push(f);
        }
    }
    let mut adj = vec![Vec::new(); faces.len()];
    for fs in owners.values() {
        for (x, &f) in fs.iter().enumerate() {
            for &g in &fs[x + 1..] {
                adj[f].push(g);
                adj[g].push(f);
            }
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

fn in_closed_triangle(p: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    orient(a, b, p) != Ordering::Less && orient(b, c, p) != Ordering::Less && orient(c, a, p) != Ordering::Less
}

/// Deterministic ear clipping. The scan resumes at the predecessor of the
/// last clipped ear, starting from vertex 0.
pub fn triangulate(poly: &Polygon) -> Result<Triangulation, TriangulationError> {
    if poly.has_holes() {
        return Err(TriangulationError::HasHoles(poly.holes().len()));
    }
    let pts = poly.outer();
    let mut ring: Vec<usize> = (0..pts.len()).collect();
    let mut triangles = Vec::with_capacity(pts.len().saturating_sub(2));
    let mut pos = 0;
    while ring.len() > 3 {
        let m = ring.len();
        let mut found = None;
        for step in 0..m {
            let k = (pos + step) % m;
            let (a, b, c) = (ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]);
            if orient(&pts[a], &pts[b], &pts[c]) != Ordering::Greater {
                continue;
            }
            let blocked = ring
                .iter()
                .any(|&v| v != a && v != b && v != c && in_closed_triangle(&pts[v], &pts[a], &pts[b], &pts[c]));
            if !blocked {
                found = Some(k);
                break;
            }
        }
        let Some(k) = found else {
            return Err(TriangulationError::NoEar { remaining: m });
        };
        triangles.push([ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]]);
        ring.remove(k);
        pos = (k + ring.len() - 1) % ring.len();
    }
    triangles.push([ring[0], ring[1], ring[2]]);
    let faces: Vec<Vec<usize>> = triangles.iter().map(|t| t.to_vec()).collect();
    let dual = shared_edge_adjacency(&faces);
    Ok(Triangulation { triangles, dual })
}

pub fn triangle_area(a: &Point, b: &Point, c: &Point) -> Rational {
    cross(a, b, c) / Rational::from_integer(2.into())
}

use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BipartiteError {
    #[error("edge ({0}, {1}) is out of range")]
    EdgeOutOfRange(usize, usize),
    #[error("edge ({0}, {1}) appears twice")]
    DuplicateEdge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, BipartiteError> {
        let mut adj = vec![Vec::new(); left_count];
        for &(l, r) in &edges {
            if l >= left_count || r >= right_count {
                return Err(BipartiteError::EdgeOutOfRange(l, r));
            }
            adj[l].push(r);
        }
        for (l, a) in adj.iter_mut().enumerate() {
            a.sort_unstable();
            if let Some(w) = a.windows(2).find(|w| w[0] == w[1]) {
                return Err(BipartiteError::DuplicateEdge(l, w[0]));
            }
        }
        Ok(BipartiteGraph {
            left_count,
            right_count,
            edges,
            adj,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted right neighbours of a left vertex.
    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adj[left]
    }
}

/// Vertex-disjoint `(left, right)` pairs, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IndependentSet {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl IndependentSet {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KonigError {
    #[error("matching pair ({0}, {1}) is not an edge or reuses a vertex")]
    InvalidMatching(usize, usize),
    #[error("matching is not maximum: an augmenting path reaches right vertex {0}")]
    NotMaximum(usize),
}

const NIL: usize = usize::MAX;

/// Hopcroft–Karp. Free left vertices are processed in index order and
/// adjacency lists are scanned in increasing order.
pub fn max_bipartite_matching(g: &BipartiteGraph) -> Matching {
    let (nl, nr) = (g.left_count, g.right_count);
    let mut mate_l = vec![NIL; nl];
    let mut mate_r = vec![NIL; nr];
    let mut dist = vec![0usize; nl];
    loop {
        // Layered BFS from all free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..nl {
            if mate_l[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &g.adj[l] {
                let m = mate_r[r];
                if m == NIL {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; nl];
        for l in 0..nl {
            if mate_l[l] == NIL {
                augment(g, l, &mut mate_l, &mut mate_r, &mut dist, &mut next);
            }
        }
    }
    let pairs = (0..nl).filter(|&l| mate_l[l] != NIL).map(|l| (l, mate_l[l])).collect();
    Matching { pairs }
}

fn augment(
    g: &BipartiteGraph,
    l: usize,
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[l] < g.adj[l].len() {
        let r = g.adj[l][next[l]];
        next[l] += 1;
        let m = mate_r[r];
        let ok = m == NIL || (dist[m] == dist[l].wrapping_add(1) && augment(g, m, mate_l, mate_r, dist, next));
        if ok {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// Alternating-level construction: `Z` holds everything reachable from a
/// free left vertex by alternating paths; the set is `(L ∩ Z) ∪ (R \ Z)`.
pub fn konig_independent_set(g: &BipartiteGraph, m: &Matching) -> Result<IndependentSet, KonigError> {
    let mut mate_l = vec![NIL; g.left_count];
    let mut mate_r = vec![NIL; g.right_count];
    for &(l, r) in &m.pairs {
        let valid = l < g.left_count
            && r < g.right_count
            && g.adj[l].binary_search(&r).is_ok()
            && mate_l[l] == NIL
            && mate_r[r] == NIL;
        if !valid {
            return Err(KonigError::InvalidMatching(l, r));
        }
        mate_l[l] = r;
        mate_r[r] = l;
    }
    let mut in_z_left = vec![false; g.left_count];
    let mut in_z_right = vec![false; g.right_count];
    let mut queue = VecDeque::new();
    for l in 0..g.left_count {
        if mate_l[l] == NIL {
            in_z_left[l] = true;
            queue.push_back(l);
        }
    }
    while let Some(l) = queue.pop_front() {
        for &r in &g.adj[l] {
            if in_z_right[r] || mate_l[l] == r {
                continue;
            }
            in_z_right[r] = true;
            let w = mate_r[r];
            if w == NIL {
                return Err(KonigError::NotMaximum(r));
            }
            if !in_z_left[w] {
                in_z_left[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(IndependentSet {
        left: (0..g.left_count).filter(|&l| in_z_left[l]).collect(),
        right: (0..g.right_count).filter(|&r| !in_z_right[r]).collect(),
    })
}

/// True when some alternating path joins a free left and a free right vertex.
pub fn has_augmenting_path(g: &BipartiteGraph, m: &Matching) -> bool {
    matches!(konig_independent_set(g, m), Err(KonigError::NotMaximum(_)))
}

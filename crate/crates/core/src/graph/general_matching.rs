use super::Matching;
use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Maximum-cardinality matching in a general graph by augmenting paths with
/// blossom contraction. Pairs are returned as `(u, v)` with `u < v`, sorted.
/// Self-loops are ignored; parallel edges are harmless.
pub fn maximum_matching_general(n: usize, edges: &[(usize, usize)]) -> Matching {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        assert!(u < n && v < n, "edge ({u}, {v}) out of range");
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut mate = vec![NIL; n];
    // Greedy start; augmentation then only grows it.
    for v in 0..n {
        if mate[v] == NIL {
            if let Some(&w) = adj[v].iter().find(|&&w| mate[w] == NIL) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut search = BlossomSearch::new(n);
    for v in 0..n {
        if mate[v] == NIL {
            if let Some(end) = search.find_path(&adj, &mate, v) {
                let mut w = end;
                while w != NIL {
                    let pw = search.parent[w];
                    let ppw = mate[pw];
                    mate[w] = pw;
                    mate[pw] = w;
                    w = ppw;
                }
            }
        }
    }
    let pairs = (0..n)
        .filter(|&v| mate[v] != NIL && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect();
    Matching { pairs }
}

/// A perfect matching when one exists.
pub fn perfect_matching_general(n: usize, edges: &[(usize, usize)]) -> Option<Matching> {
    if n % 2 == 1 {
        return None;
    }
    let m = maximum_matching_general(n, edges);
    (2 * m.len() == n).then_some(m)
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![NIL; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NIL {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Returns the free endpoint of an augmenting path from `root`, with the
    /// path encoded in `parent` and `mate`.
    fn find_path(&mut self, adj: &[Vec<usize>], mate: &[usize], root: usize) -> Option<usize> {
        let n = adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NIL && self.parent[mate[to]] != NIL) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if mate[to] == NIL {
                        return Some(to);
                    }
                    let m = mate[to];
                    self.used[m] = true;
                    queue.push_back(m);
                }
            }
        }
        None
    }
}

//! Maximum-cardinality matching on general graphs (Edmonds' blossom
//! contraction) and minimum edge cover.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected graph without loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Edges are stored as `(min, max)` in first-seen order; repeats are
    /// dropped.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = SimpleGraph { n, edges: Vec::new(), adj: vec![Vec::new(); n] };
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            let e = (u.min(v), u.max(v));
            if g.adj[u].contains(&v) {
                continue;
            }
            g.edges.push(e);
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains(&v))
    }
}

/// Edges as `(min, max)` pairs, sorted.
pub type EdgeSet = Vec<(usize, usize)>;

pub fn is_matching(g: &SimpleGraph, m: &[(usize, usize)]) -> bool {
    let mut used = vec![false; g.vertex_count()];
    m.iter().all(|&(u, v)| {
        let ok = g.has_edge(u, v) && !used[u] && !used[v];
        used[u] = true;
        used[v] = true;
        ok
    })
}

pub fn is_edge_cover(g: &SimpleGraph, c: &[(usize, usize)]) -> bool {
    let mut covered = vec![false; g.vertex_count()];
    for &(u, v) in c {
        if !g.has_edge(u, v) {
            return false;
        }
        covered[u] = true;
        covered[v] = true;
    }
    covered.into_iter().all(|c| c)
}

struct Blossom<'a> {
    g: &'a SimpleGraph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("alternating tree"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("alternating tree")].expect("alternating tree");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("matched on blossom path");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("alternating tree");
        }
    }

    /// Grows an alternating tree from `root`; returns the free vertex that
    /// ends an augmenting path, if any.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n;
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &self.g.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                if to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some()) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }
}

/// A maximum-cardinality matching, sorted. Deterministic for a given edge
/// insertion order.
pub fn maximum_matching(g: &SimpleGraph) -> EdgeSet {
    let n = g.n;
    let mut b = Blossom {
        g,
        mate: vec![None; n],
        parent: vec![None; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    for root in 0..n {
        if b.mate[root].is_some() {
            continue;
        }
        if let Some(mut v) = b.find_path(root) {
            while let Some(pv) = b.parent[v] {
                let ppv = b.mate[pv];
                b.mate[v] = Some(pv);
                b.mate[pv] = Some(v);
                match ppv {
                    Some(next) => v = next,
                    None => break,
                }
            }
        }
    }
    let mut m: EdgeSet = (0..n)
        .filter_map(|u| b.mate[u].filter(|&v| u < v).map(|v| (u, v)))
        .collect();
    m.sort();
    debug_assert!(is_matching(g, &m));
    m
}

/// Minimum edge cover: a maximum matching extended by the first incident
/// edge of every unmatched vertex. Size is `|V| - |maximum matching|`.
pub fn minimum_edge_cover(g: &SimpleGraph) -> Result<EdgeSet> {
    if let Some(v) = (0..g.n).find(|&v| g.degree(v) == 0) {
        return Err(Error::HasIsolatedVertex(v));
    }
    let mut cover = maximum_matching(g);
    let mut covered = vec![false; g.n];
    for &(u, v) in &cover {
        covered[u] = true;
        covered[v] = true;
    }
    for v in 0..g.n {
        if !covered[v] {
            let u = g.adj[v][0];
            cover.push((u.min(v), u.max(v)));
            covered[v] = true;
            covered[u] = true;
        }
    }
    cover.sort();
    cover.dedup();
    debug_assert!(is_edge_cover(g, &cover));
    Ok(cover)
}

/// Exhaustive references for small graphs, independent of the blossom code.
pub mod brute {
    use super::*;

    /// Largest matching: the lowest undecided vertex is either left single
    /// or paired with each undecided neighbour in turn.
    pub fn max_matching_size(g: &SimpleGraph) -> usize {
        fn go(g: &SimpleGraph, done: &mut Vec<bool>) -> usize {
            let Some(v) = (0..g.n).find(|&v| !done[v]) else {
                return 0;
            };
            done[v] = true;
            let mut best = go(g, done);
            for &u in &g.adj[v] {
                if !done[u] {
                    done[u] = true;
                    best = best.max(1 + go(g, done));
                    done[u] = false;
                }
            }
            done[v] = false;
            best
        }
        go(g, &mut vec![false; g.n])
    }

    /// Smallest edge cover: the lowest uncovered vertex must take one of its
    /// edges. `None` when some vertex is isolated.
    pub fn min_edge_cover_size(g: &SimpleGraph) -> Option<usize> {
        fn go(g: &SimpleGraph, count: &mut Vec<usize>, used: usize, best: &mut usize) {
            if used >= *best {
                return;
            }
            let Some(v) = (0..g.n).find(|&v| count[v] == 0) else {
                *best = used;
                return;
            };
            for &u in &g.adj[v] {
                count[u] += 1;
                count[v] += 1;
                go(g, count, used + 1, best);
                count[u] -= 1;
                count[v] -= 1;
            }
        }
        if (0..g.n).any(|v| g.degree(v) == 0) {
            return None;
        }
        let mut best = usize::MAX;
        go(g, &mut vec![0; g.n], 0, &mut best);
        Some(best)
    }
}

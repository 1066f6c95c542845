//! Bipartite graph model, structural profile and girth.
//!
//! Nodes are addressed by dense 0-based indices per side. Where a single
//! index space is convenient (BFS, the adjacency matrix, arcs) left node `u`
//! maps to `u` and right node `w` maps to `n + w`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple bipartite graph `G = (U ∪ W, E)` with `|U| = n`, `|W| = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    /// Sorted, deduplicated `(u, w)` pairs.
    edges: Vec<(usize, usize)>,
    left_adj: Vec<Vec<usize>>,
    right_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph, silently collapsing duplicate edges.
    pub fn new(
        left_count: usize,
        right_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::with_duplicates(left_count, right_count, edges).map(|(g, _)| g)
    }

    /// Builds a graph and returns the duplicate edges that were collapsed,
    /// one entry per redundant occurrence.
    pub fn with_duplicates(
        left_count: usize,
        right_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, Vec<(usize, usize)>)> {
        if left_count == 0 || right_count == 0 {
            return Err(Error::ZeroNodes);
        }
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(u, w) in &edges {
            if u >= left_count {
                return Err(Error::IndexOutOfRange {
                    line: 0,
                    index: u,
                    bound: left_count,
                });
            }
            if w >= right_count {
                return Err(Error::IndexOutOfRange {
                    line: 0,
                    index: w,
                    bound: right_count,
                });
            }
        }
        edges.sort_unstable();
        let mut duplicates = Vec::new();
        edges.dedup_by(|a, b| {
            let dup = a == b;
            if dup {
                duplicates.push(*a);
            }
            dup
        });

        let mut left_adj = vec![Vec::new(); left_count];
        let mut right_adj = vec![Vec::new(); right_count];
        for &(u, w) in &edges {
            left_adj[u].push(w);
            right_adj[w].push(u);
        }
        // `edges` is sorted by (u, w) so left lists are already sorted.
        for list in &mut right_adj {
            list.sort_unstable();
        }
        Ok((
            Self {
                left_count,
                right_count,
                edges,
                left_adj,
                right_adj,
            },
            duplicates,
        ))
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn node_count(&self) -> usize {
        self.left_count + self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic `(u, w)` order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn left_neighbors(&self, u: usize) -> &[usize] {
        &self.left_adj[u]
    }

    pub fn right_neighbors(&self, w: usize) -> &[usize] {
        &self.right_adj[w]
    }

    pub fn left_degree(&self, u: usize) -> usize {
        self.left_adj[u].len()
    }

    pub fn right_degree(&self, w: usize) -> usize {
        self.right_adj[w].len()
    }

    /// Position of edge `(u, w)` in [`edges`](Self::edges), if present.
    pub fn edge_index(&self, u: usize, w: usize) -> Option<usize> {
        self.edges.binary_search(&(u, w)).ok()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.edge_index(u, w).is_some()
    }

    /// Degree of a node in the joint index space.
    pub fn degree(&self, v: usize) -> usize {
        if v < self.left_count {
            self.left_adj[v].len()
        } else {
            self.right_adj[v - self.left_count].len()
        }
    }

    /// Neighbors of a node in the joint index space, as joint indices.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.left_count;
        let (list, offset) = if v < n {
            (&self.left_adj[v], n)
        } else {
            (&self.right_adj[v - n], 0)
        };
        list.iter().map(move |&x| x + offset)
    }

    /// The same graph with the two sides exchanged.
    pub fn transposed(&self) -> Self {
        Self::new(
            self.right_count,
            self.left_count,
            self.edges.iter().map(|&(u, w)| (w, u)),
        )
        .expect("transpose of a valid graph is valid")
    }

    pub fn profile(&self) -> GraphProfile {
        profile(self)
    }
}

/// Girth of a graph; forests have no cycle at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProfile {
    pub is_connected: bool,
    pub is_biregular: bool,
    pub d_v: Option<usize>,
    pub d_c: Option<usize>,
    pub girth: Girth,
    /// Non-increasing degree sequences of `U` and `W`.
    pub degree_sequences: (Vec<usize>, Vec<usize>),
}

pub fn profile(g: &BipartiteGraph) -> GraphProfile {
    let mut left: Vec<usize> = (0..g.left_count()).map(|u| g.left_degree(u)).collect();
    let mut right: Vec<usize> = (0..g.right_count()).map(|w| g.right_degree(w)).collect();
    left.sort_unstable_by(|a, b| b.cmp(a));
    right.sort_unstable_by(|a, b| b.cmp(a));

    let uniform = |seq: &[usize]| -> Option<usize> {
        let first = *seq.first()?;
        (first > 0 && seq.iter().all(|&d| d == first)).then_some(first)
    };
    let (d_v, d_c) = match (uniform(&left), uniform(&right)) {
        (Some(a), Some(b)) => (Some(a), Some(b)),
        _ => (None, None),
    };

    GraphProfile {
        is_connected: is_connected(g),
        is_biregular: d_v.is_some(),
        d_v,
        d_c,
        girth: girth(g),
        degree_sequences: (left, right),
    }
}

pub fn is_connected(g: &BipartiteGraph) -> bool {
    let total = g.node_count();
    let mut seen = vec![false; total];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for x in g.neighbors(v) {
            if !seen[x] {
                seen[x] = true;
                reached += 1;
                queue.push_back(x);
            }
        }
    }
    reached == total
}

/// Exact girth from one BFS per node.
///
/// A BFS from `r` that meets an already-labelled node `x` through a non-tree
/// edge `(v, x)` closes a cycle of length at most `dist[v] + dist[x] + 1`;
/// when `r` lies on a shortest cycle the bound is attained.
pub fn girth(g: &BipartiteGraph) -> Girth {
    let total = g.node_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();

    for root in 0..total {
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();

        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(v) = queue.pop_front() {
            // No shorter cycle can be closed from this depth onwards.
            if 2 * dist[v] >= best {
                break;
            }
            for x in g.neighbors(v) {
                if dist[x] == usize::MAX {
                    dist[x] = dist[v] + 1;
                    parent[x] = v;
                    touched.push(x);
                    queue.push_back(x);
                } else if parent[v] != x {
                    let len = dist[v] + dist[x] + 1;
                    if len < best {
                        best = len;
                    }
                    if 2 * dist[v] >= best {
                        break 'bfs;
                    }
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn k34_profile_matches_degree_sequences() {
        let g = families::complete_bipartite(3, 4);
        let p = g.profile();
        assert_eq!(p.degree_sequences, (vec![4, 4, 4], vec![3, 3, 3, 3]));
        assert!(p.is_biregular);
        assert_eq!((p.d_v, p.d_c), (Some(4), Some(3)));
        assert_eq!(p.girth, Girth::Finite(4));
        assert!(p.is_connected);
    }

    #[test]
    fn single_edge_is_a_connected_forest() {
        let g = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        let p = g.profile();
        assert_eq!(p.girth, Girth::Infinite);
        assert!(p.is_connected);
        assert!(p.is_biregular);
    }

    #[test]
    fn tesseract_profile() {
        let g = families::hypercube(4);
        let p = g.profile();
        assert_eq!(
            (g.left_count(), g.right_count(), g.edge_count()),
            (8, 8, 32)
        );
        assert_eq!(p.girth, Girth::Finite(4));
        assert_eq!((p.d_v, p.d_c), (Some(4), Some(4)));
        assert!(p.is_connected);
    }

    #[test]
    fn even_cycles_have_their_length_as_girth() {
        for len in [4, 6, 8, 14] {
            let g = families::cycle(len);
            assert_eq!(girth(&g), Girth::Finite(len), "C_{len}");
        }
    }

    #[test]
    fn heawood_graph_has_girth_six() {
        assert_eq!(girth(&families::heawood()), Girth::Finite(6));
    }

    #[test]
    fn disconnected_graph_detected() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert!(!is_connected(&g));
        let g = BipartiteGraph::new(2, 3, [(0, 0), (1, 1), (0, 1)]).unwrap();
        assert!(!is_connected(&g));
    }

    #[test]
    fn irregular_graph_is_not_biregular() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        let p = g.profile();
        assert!(!p.is_biregular);
        assert_eq!(p.d_v, None);
    }

    #[test]
    fn duplicates_are_collapsed_and_reported() {
        let (g, dups) = BipartiteGraph::with_duplicates(1, 1, [(0, 0), (0, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(dups, vec![(0, 0)]);
    }

    #[test]
    fn rejects_empty_sides_and_bad_indices() {
        assert!(matches!(
            BipartiteGraph::new(0, 3, []),
            Err(Error::ZeroNodes)
        ));
        assert!(matches!(
            BipartiteGraph::new(2, 2, [(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, .. })
        ));
    }

    /// Girth by brute force: shortest cycle through each edge is one plus the
    /// distance between its endpoints with the edge removed.
    fn girth_by_edge_removal(g: &BipartiteGraph) -> Girth {
        let n = g.left_count();
        let mut best = usize::MAX;
        for &(u, w) in g.edges() {
            let (s, t) = (u, n + w);
            let mut dist = vec![usize::MAX; g.node_count()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for x in g.neighbors(v) {
                    if (v == s && x == t) || (v == t && x == s) {
                        continue;
                    }
                    if dist[x] == usize::MAX {
                        dist[x] = dist[v] + 1;
                        q.push_back(x);
                    }
                }
            }
            if dist[t] != usize::MAX {
                best = best.min(dist[t] + 1);
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    proptest::proptest! {
        #[test]
        fn girth_is_even_and_matches_edge_removal_oracle(
            n in 1usize..8,
            m in 1usize..8,
            bits in proptest::collection::vec(proptest::bool::weighted(0.35), 64),
        ) {
            let edges = (0..n).flat_map(|u| (0..m).map(move |w| (u, w)))
                .filter(|&(u, w)| bits[u * 8 + w]);
            let g = BipartiteGraph::new(n, m, edges).unwrap();
            let gi = girth(&g);
            if let Girth::Finite(len) = gi {
                proptest::prop_assert_eq!(len % 2, 0);
            }
            proptest::prop_assert_eq!(gi, girth_by_edge_removal(&g));
        }
    }
}

//! Named graph families used as fixtures and by the CLI.

use crate::graph::BipartiteGraph;

/// `K_{n,m}` with `n` left nodes each joined to all `m` right nodes.
pub fn complete_bipartite(n: usize, m: usize) -> BipartiteGraph {
    BipartiteGraph::new(n, m, (0..n).flat_map(|u| (0..m).map(move |w| (u, w))))
        .expect("complete bipartite graph needs n, m >= 1")
}

/// The even cycle `C_len`, alternating between sides.
pub fn cycle(len: usize) -> BipartiteGraph {
    assert!(
        len >= 4 && len.is_multiple_of(2),
        "bipartite cycles have even length >= 4"
    );
    let half = len / 2;
    let edges = (0..half).flat_map(|i| [(i, i), ((i + 1) % half, i)]);
    BipartiteGraph::new(half, half, edges).unwrap()
}

/// The star `K_{1,k}` with the centre on the left.
pub fn star(k: usize) -> BipartiteGraph {
    complete_bipartite(1, k)
}

/// The hypercube `Q_dim`, split by parity of the vertex label.
pub fn hypercube(dim: usize) -> BipartiteGraph {
    assert!((1..=20).contains(&dim));
    let total = 1usize << dim;
    let even: Vec<usize> = (0..total).filter(|v| v.count_ones() % 2 == 0).collect();
    let odd: Vec<usize> = (0..total).filter(|v| v.count_ones() % 2 == 1).collect();
    let pos = |list: &[usize], v: usize| list.binary_search(&v).unwrap();
    let mut edges = Vec::new();
    for (u, &v) in even.iter().enumerate() {
        for bit in 0..dim {
            edges.push((u, pos(&odd, v ^ (1 << bit))));
        }
    }
    BipartiteGraph::new(even.len(), odd.len(), edges).unwrap()
}

/// The Heawood graph: incidence graph of the Fano plane, 3-regular with girth 6.
pub fn heawood() -> BipartiteGraph {
    // Lines {i, i+1, i+3} mod 7.
    let edges = (0..7).flat_map(|line| [0, 1, 3].map(|s| ((line + s) % 7, line)));
    BipartiteGraph::new(7, 7, edges).unwrap()
}

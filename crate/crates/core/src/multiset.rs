//! Multisets of complex numbers: clustering and matching distance.

use num_complex::Complex64;

/// Groups points lying within `tol` of a cluster's running mean. Output is
/// sorted by real part, then imaginary part, both descending.
pub fn cluster_complex(points: &[(Complex64, usize)], tol: f64) -> Vec<(Complex64, usize)> {
    let mut sorted: Vec<(Complex64, usize)> = points.iter().copied().filter(|p| p.1 > 0).collect();
    sorted.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));

    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    let mut sums: Vec<Complex64> = Vec::new();
    for (z, mult) in sorted {
        let hit = clusters.iter().rposition(|&(c, _)| (c - z).norm() < tol);
        match hit {
            Some(i) => {
                sums[i] += z * mult as f64;
                clusters[i].1 += mult;
                clusters[i].0 = sums[i] / clusters[i].1 as f64;
            }
            None => {
                sums.push(z * mult as f64);
                clusters.push((z, mult));
            }
        }
    }
    clusters.sort_by(|a, b| b.0.re.total_cmp(&a.0.re).then(b.0.im.total_cmp(&a.0.im)));
    clusters
}

/// Whether the two multisets admit a bijection moving no point further
/// than `tol`. Solved as a transportation problem between the groups.
pub fn within_matching_distance(
    a: &[(Complex64, usize)],
    b: &[(Complex64, usize)],
    tol: f64,
) -> bool {
    let total_a: usize = a.iter().map(|p| p.1).sum();
    let total_b: usize = b.iter().map(|p| p.1).sum();
    if total_a != total_b {
        return false;
    }
    let adj: Vec<Vec<usize>> = a
        .iter()
        .map(|&(za, _)| {
            b.iter()
                .enumerate()
                .filter(|(_, &(zb, _))| (za - zb).norm() <= tol)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    max_flow(a, b, &adj) == total_a
}

/// Bottleneck matching distance: the smallest `t` for which
/// [`within_matching_distance`] holds. `None` when the totals differ.
pub fn matching_distance(a: &[(Complex64, usize)], b: &[(Complex64, usize)]) -> Option<f64> {
    let total_a: usize = a.iter().map(|p| p.1).sum();
    let total_b: usize = b.iter().map(|p| p.1).sum();
    if total_a != total_b {
        return None;
    }
    if total_a == 0 {
        return Some(0.0);
    }
    let mut hi = 1.0f64;
    while !within_matching_distance(a, b, hi) {
        hi *= 2.0;
    }
    let mut lo = 0.0f64;
    if within_matching_distance(a, b, lo) {
        return Some(0.0);
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if within_matching_distance(a, b, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Source -> left groups -> right groups -> sink, solved with Dinic.
fn max_flow(a: &[(Complex64, usize)], b: &[(Complex64, usize)], adj: &[Vec<usize>]) -> usize {
    let source = a.len() + b.len();
    let sink = source + 1;
    let mut net = FlowNetwork::new(sink + 1);
    for (i, &(_, cap)) in a.iter().enumerate() {
        net.add_edge(source, i, cap);
        for &j in &adj[i] {
            net.add_edge(i, a.len() + j, usize::MAX);
        }
    }
    for (j, &(_, cap)) in b.iter().enumerate() {
        net.add_edge(a.len() + j, sink, cap);
    }
    net.max_flow(source, sink)
}

struct FlowNetwork {
    /// (to, residual capacity); edge `e ^ 1` is the reverse of `e`.
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    level: Vec<usize>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            edges: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: usize) {
        self.out[from].push(self.edges.len());
        self.edges.push((to, cap));
        self.out[to].push(self.edges.len());
        self.edges.push((from, 0));
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v] {
                let (to, cap) = self.edges[e];
                if cap > 0 && self.level[to] == usize::MAX {
                    self.level[to] = self.level[v] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, limit: usize) -> usize {
        if v == t {
            return limit;
        }
        while self.cursor[v] < self.out[v].len() {
            let e = self.out[v][self.cursor[v]];
            let (to, cap) = self.edges[e];
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.edges[e].1 -= pushed;
                    self.edges[e ^ 1].1 = self.edges[e ^ 1].1.saturating_add(pushed);
                    return pushed;
                }
            }
            self.cursor[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let pushed = self.dfs(s, t, usize::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

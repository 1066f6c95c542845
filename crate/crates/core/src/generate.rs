//! Seeded random test graphs.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{is_connected, BipartiteGraph};

/// Attempts (each with seed `seed + attempt`) before giving up.
const MAX_ATTEMPTS: u64 = 500;

/// A simple connected `(d_v, d_c)`-regular bipartite graph with `n` left and
/// `m` right nodes.
///
/// Stubs are paired by the configuration model, parallel edges are then
/// removed by random double-edge swaps. If repair stalls or the result is
/// disconnected the whole draw is repeated with the next seed, so the output
/// is a deterministic function of the arguments.
pub fn random_biregular(
    n: usize,
    m: usize,
    d_v: usize,
    d_c: usize,
    seed: u64,
) -> Result<BipartiteGraph> {
    if n == 0 || m == 0 || d_v == 0 || d_c == 0 {
        return Err(Error::InfeasibleDegrees(
            "sizes and degrees must be positive".into(),
        ));
    }
    if n * d_v != m * d_c {
        return Err(Error::InfeasibleDegrees(format!(
            "n*d_v = {} differs from m*d_c = {}",
            n * d_v,
            m * d_c
        )));
    }
    if d_v > m || d_c > n {
        return Err(Error::InfeasibleDegrees(format!(
            "degrees ({d_v}, {d_c}) exceed the opposite side sizes ({m}, {n})"
        )));
    }

    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut right: Vec<usize> = (0..m).flat_map(|w| std::iter::repeat_n(w, d_c)).collect();
        right.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = right
            .into_iter()
            .enumerate()
            .map(|(i, w)| (i / d_v, w))
            .collect();

        if !repair_parallel_edges(&mut edges, &mut rng) {
            continue;
        }
        let g = BipartiteGraph::new(n, m, edges)?;
        if is_connected(&g) {
            return Ok(g);
        }
    }
    Err(Error::RepairFailed {
        attempts: MAX_ATTEMPTS as usize,
    })
}

/// Swaps right endpoints between a duplicated edge and a random partner until
/// the edge multiset is a set. Degrees are preserved by every swap.
fn repair_parallel_edges(edges: &mut [(usize, usize)], rng: &mut impl Rng) -> bool {
    let mut count: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
    for &e in edges.iter() {
        *count.entry(e).or_default() += 1;
    }
    let budget = 100 * edges.len() + 100;
    for _ in 0..budget {
        let Some(i) = edges.iter().position(|e| count[e] > 1) else {
            return true;
        };
        let j = rng.gen_range(0..edges.len());
        let (u1, w1) = edges[i];
        let (u2, w2) = edges[j];
        if u1 == u2 || w1 == w2 {
            continue;
        }
        let (a, b) = ((u1, w2), (u2, w1));
        if count.get(&a).copied().unwrap_or(0) > 0 || count.get(&b).copied().unwrap_or(0) > 0 {
            continue;
        }
        for old in [(u1, w1), (u2, w2)] {
            *count.get_mut(&old).unwrap() -= 1;
        }
        *count.entry(a).or_default() += 1;
        *count.entry(b).or_default() += 1;
        edges[i] = a;
        edges[j] = b;
    }
    edges.iter().all(|e| count[e] == 1)
}

/// A uniformly random bipartite graph with exactly `edges` distinct edges
/// (not necessarily connected or regular).
pub fn random_bipartite(n: usize, m: usize, edges: usize, seed: u64) -> Result<BipartiteGraph> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroNodes);
    }
    if edges > n * m {
        return Err(Error::InfeasibleDegrees(format!(
            "{edges} edges do not fit in K_{{{n},{m}}}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..m).map(move |w| (u, w))).collect();
    let (chosen, _) = all.partial_shuffle(&mut rng, edges);
    BipartiteGraph::new(n, m, chosen.iter().copied())
}

//! Cycle multiplicities `N_k` from an edge spectrum, plus independent
//! oracles: canonical DFS enumeration, the `K_{m,n}` closed forms, and the
//! `g + 4` decomposition into tree walks and cycle-bearing walks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::edge_matrix::{validity_window, EdgeSpectrum};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Girth};
use crate::spectra::AdjacencySpectrum;

/// Largest accepted distance between a spectral count and its rounding.
pub const RESIDUAL_GATE: f64 = 1e-4;
/// Largest accepted `|Im Σ ηᵏ| / max(1, |Σ ηᵏ|)` for even `k`.
pub const IMAGINARY_GATE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    SpectralTransfer,
    TracePower,
    DirectEdgeSpectrum,
    BruteForce,
    ClosedForm,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::SpectralTransfer => "transfer",
            Route::TracePower => "trace",
            Route::DirectEdgeSpectrum => "direct",
            Route::BruteForce => "brute",
            Route::ClosedForm => "closed_form",
        }
    }

    pub fn is_spectral(self) -> bool {
        matches!(self, Route::SpectralTransfer | Route::DirectEdgeSpectrum)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleCounts {
    pub girth: usize,
    pub route: Route,
    pub counts: BTreeMap<usize, u64>,
    /// Distance of the raw spectral value from the reported integer.
    pub residuals: BTreeMap<usize, f64>,
}

impl CycleCounts {
    pub fn new(girth: usize, route: Route) -> Self {
        Self {
            girth,
            route,
            counts: BTreeMap::new(),
            residuals: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, k: usize, count: u64, residual: f64) {
        self.counts.insert(k, count);
        self.residuals.insert(k, residual);
    }

    pub fn get(&self, k: usize) -> Option<u64> {
        self.counts.get(&k).copied()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0, |a, &r| a.max(r))
    }
}

/// `N_k = Re(Σ μᵢ ηᵢᵏ) / 2k` for even `k ∈ [g, max_k]`, rounded under the
/// residual and imaginary-part gates.
pub fn counts_from_spectrum(
    es: &EdgeSpectrum,
    girth: Girth,
    max_k: Option<usize>,
    route: Route,
) -> Result<CycleCounts> {
    let (g, max_k) = validity_window(girth, max_k)?;
    let mut counts = CycleCounts::new(g, route);
    for k in (g..=max_k).step_by(2) {
        let sum = es.power_sum(k as u32);
        if sum.im.abs() >= IMAGINARY_GATE * sum.norm().max(1.0) {
            return Err(Error::ImaginaryPowerSum {
                k,
                real: sum.re,
                imag: sum.im,
            });
        }
        let raw = sum.re / (2 * k) as f64;
        let rounded = raw.round();
        let residual = (raw - rounded).abs();
        if residual >= RESIDUAL_GATE {
            return Err(Error::Residual { k, raw, residual });
        }
        if rounded < 0.0 || rounded >= u64::MAX as f64 {
            return Err(Error::NonIntegralCount {
                k,
                detail: format!("rounded value {rounded} is out of range"),
            });
        }
        counts.insert(k, rounded as u64, residual);
    }
    if counts.get(g) == Some(0) {
        return Err(Error::NonIntegralCount {
            k: g,
            detail: "no cycles of girth length, so the spectrum is inconsistent with the graph"
                .into(),
        });
    }
    Ok(counts)
}

/// Relative size of a power sum where it must vanish or be real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSumCheck {
    pub k: usize,
    /// Odd `k`: `|Σ μηᵏ| / Σ μ|η|ᵏ`. Even `k`: `|Im Σ μηᵏ| / max(1, |Σ μηᵏ|)`.
    pub relative: f64,
}

/// Measures the odd-`k` and even-`k` conditions for `1 ≤ k ≤ max_k`.
pub fn power_sum_hygiene(es: &EdgeSpectrum, max_k: usize) -> Vec<PowerSumCheck> {
    (1..=max_k)
        .map(|k| {
            let sum = es.power_sum(k as u32);
            let relative = if k % 2 == 1 {
                let scale = es.abs_power_sum(k as u32);
                if scale == 0.0 {
                    0.0
                } else {
                    sum.norm() / scale
                }
            } else {
                sum.im.abs() / sum.norm().max(1.0)
            };
            PowerSumCheck { k, relative }
        })
        .collect()
}

/// Limits for [`brute_force_counts`]; `force` lifts them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub max_edges: usize,
    pub max_length: usize,
    pub force: bool,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        Self {
            max_edges: 200,
            max_length: 12,
            force: false,
        }
    }
}

/// Exact `N_k` for even `k ∈ [g, max_k]` by enumeration.
///
/// Every cycle is found once: rooted at its smallest node, with the
/// direction in which the second node is smaller than the last. Not limited
/// to `k ≤ 2g − 2`; `max_k` defaults to `2g − 2`.
pub fn brute_force_counts(
    g: &BipartiteGraph,
    max_k: Option<usize>,
    limits: BruteForceLimits,
) -> Result<CycleCounts> {
    let girth = g.profile().girth.finite().ok_or(Error::Forest)?;
    let max_k = max_k.unwrap_or(2 * girth - 2);
    if max_k < girth {
        return Err(Error::LengthOutOfWindow { k: max_k, girth });
    }
    if !limits.force {
        if g.edge_count() > limits.max_edges {
            return Err(Error::SizeCap(format!(
                "brute force limited to {} edges, graph has {}",
                limits.max_edges,
                g.edge_count()
            )));
        }
        if max_k > limits.max_length {
            return Err(Error::SizeCap(format!(
                "brute force limited to length {}, requested {max_k}",
                limits.max_length
            )));
        }
    }

    let adj: Vec<Vec<usize>> = (0..g.node_count())
        .map(|v| g.neighbors(v).collect())
        .collect();
    let mut tally = vec![0u64; max_k + 1];
    let mut on_path = vec![false; adj.len()];
    let mut path = Vec::with_capacity(max_k);
    for root in 0..adj.len() {
        on_path[root] = true;
        path.push(root);
        extend(&adj, root, max_k, &mut path, &mut on_path, &mut tally);
        path.pop();
        on_path[root] = false;
    }

    let mut counts = CycleCounts::new(girth, Route::BruteForce);
    for k in (girth..=max_k).step_by(2) {
        counts.insert(k, tally[k], 0.0);
    }
    Ok(counts)
}

fn extend(
    adj: &[Vec<usize>],
    root: usize,
    max_k: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    tally: &mut [u64],
) {
    let last = *path.last().unwrap();
    for &next in &adj[last] {
        if next == root {
            if path.len() >= 4 && path[1] < last {
                tally[path.len()] += 1;
            }
        } else if next > root && !on_path[next] && path.len() < max_k {
            on_path[next] = true;
            path.push(next);
            extend(adj, root, max_k, path, on_path, tally);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// `N_4 = (m−1)(n−1)mn/4` and `N_6 = m(m−1)(m−2)n(n−1)(n−2)/6` for `K_{m,n}`.
pub fn complete_bipartite_closed_form(m: u64, n: u64, k: usize) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroNodes);
    }
    let value = match k {
        4 => m * (m - 1) * n * (n - 1) / 4,
        6 => {
            let falling = |x: u64| x * x.saturating_sub(1) * x.saturating_sub(2);
            falling(m) * falling(n) / 6
        }
        _ => return Err(Error::UnsupportedLength(k)),
    };
    Ok(value)
}

/// `S_{d_root, d_other, length}`: closed walks of the given length from the
/// root of the infinite tree whose root has degree `d_root` and whose levels
/// alternate between degrees `d_other` and `d_root`.
pub fn tree_walk_count(d_root: usize, d_other: usize, length: usize) -> BigUint {
    if length % 2 == 1 {
        return BigUint::zero();
    }
    // ways[d] = walks of the current length ending at depth d.
    let mut ways = vec![BigUint::zero(); length / 2 + 2];
    ways[0] = BigUint::from(1u32);
    for step in 0..length {
        let mut next = vec![BigUint::zero(); ways.len()];
        for depth in 0..=(step.min(ways.len() - 2)) {
            let w = &ways[depth];
            if w.is_zero() {
                continue;
            }
            let down = match depth {
                0 => d_root,
                d if d % 2 == 1 => d_other.saturating_sub(1),
                _ => d_root.saturating_sub(1),
            };
            if down > 0 {
                next[depth + 1] += w * BigUint::from(down);
            }
            if depth > 0 {
                next[depth - 1] += w;
            }
        }
        ways = next;
    }
    ways.swap_remove(0)
}

/// Terms of the `g + 4` decomposition, kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPlus4 {
    pub length: usize,
    /// `Σ λᵢ^{g+4}`, rounded.
    pub power_sum: BigInt,
    /// Closed cycle-free walks `Ω_{g+4}`.
    pub tree_walks: BigInt,
    /// `Ψ_{g+4} / 2(g+4)`.
    pub cycle_walks_per_start: BigInt,
    /// `N_{g+4}`; negative values are reported, not clamped.
    pub count: BigInt,
}

/// `N_{g+4}` from the adjacency spectrum through closed-walk bookkeeping:
/// `[Σλ^{g+4} − Ω − Ψ] / 2(g+4)` with `Ω` from tree walks and `Ψ` from
/// `N_g`, `N_{g+2}` and the degrees. Requires `g ≥ 6`.
pub fn g_plus_4_cross_check(
    graph: &BipartiteGraph,
    spec: &AdjacencySpectrum,
    counts: &CycleCounts,
) -> Result<GPlus4> {
    let profile = graph.profile();
    let (Some(d_v), Some(d_c)) = (profile.d_v, profile.d_c) else {
        return Err(Error::NotBiregular);
    };
    if !profile.is_connected {
        return Err(Error::Disconnected);
    }
    let g = profile.girth.finite().ok_or(Error::Forest)?;
    let len = g + 4;
    if len > 2 * g - 2 {
        return Err(Error::LengthOutOfWindow { k: len, girth: g });
    }
    let n_g = BigInt::from(counts.get(g).ok_or(Error::MissingCount(g))?);
    let n_g2 = BigInt::from(counts.get(g + 2).ok_or(Error::MissingCount(g + 2))?);

    let raw = spec.power_sum(len as u32);
    let rounded = raw.round();
    let residual = (raw - rounded).abs() / (2 * len) as f64;
    if residual >= RESIDUAL_GATE || !rounded.is_finite() {
        return Err(Error::Residual {
            k: len,
            raw: raw / (2 * len) as f64,
            residual,
        });
    }
    let power_sum = BigInt::from(rounded as i128);

    let omega = BigInt::from(graph.left_count()) * BigInt::from(tree_walk_count(d_v, d_c, len))
        + BigInt::from(graph.right_count()) * BigInt::from(tree_walk_count(d_c, d_v, len));

    let (dv, dc, gi) = (d_v as i128, d_c as i128, g as i128);
    let h = gi / 2;
    let choose2 = |x: i128| x * (x - 1) / 2;
    let coeff_g2 = (gi + 2) / 2 * (dv + dc) - (gi + 2);
    let coeff_g = h * (dv - 2) * (dc - 1)
        + h * (dc - 2) * (dv - 1)
        + (choose2(h) + h) * (dv - 2) * (dv - 2)
        + (choose2(h) + h) * (dc - 2) * (dc - 2)
        + h * h * (dv - 2) * (dc - 2)
        + choose2(gi)
        + 2 * gi
        + (gi + 2) * (h * (dv - 2) + h * (dc - 2));
    let psi_per = &n_g2 * BigInt::from(coeff_g2) + &n_g * BigInt::from(coeff_g);

    let denom = BigInt::from(2 * len);
    let numerator = &power_sum - &omega;
    if !(&numerator % &denom).is_zero() {
        return Err(Error::NonIntegralCount {
            k: len,
            detail: format!("power sum minus tree walks ({numerator}) is not divisible by {denom}"),
        });
    }
    let count = numerator / denom - &psi_per;
    Ok(GPlus4 {
        length: len,
        power_sum,
        tree_walks: omega,
        cycle_walks_per_start: psi_per,
        count,
    })
}

impl GPlus4 {
    pub fn count_u64(&self) -> Option<u64> {
        self.count.to_u64()
    }
}

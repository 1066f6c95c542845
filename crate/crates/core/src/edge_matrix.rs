//! The directed edge (non-backtracking) matrix `A_e` and the cycle-counting
//! primitives built directly on it.
//!
//! Arc `i < |E|` is the `i`-th edge (lexicographic `(u, w)` order) directed
//! `U → W`; arc `|E| + i` is its inverse. With this numbering `A_e` is block
//! anti-diagonal: `U → W` arcs are only followed by `W → U` arcs.

use faer::Mat;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{CheckedAdd, One, ToPrimitive, Zero};

use crate::cycles::{CycleCounts, Route};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Girth};
use crate::multiset::cluster_complex;
use crate::spectra::default_cluster_tolerance;

/// Default cap on `2|E|` for the dense nonsymmetric decomposition.
pub const DEFAULT_EDGE_CAP: usize = 6000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedArc {
    /// Origin, in the joint node index space.
    pub origin: usize,
    /// Terminus, in the joint node index space.
    pub terminus: usize,
}

/// Sparse 0/1 matrix over the `2|E|` arcs, stored as sorted successor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedEdgeMatrix {
    edge_count: usize,
    arcs: Vec<DirectedArc>,
    offsets: Vec<usize>,
    successors: Vec<usize>,
}

impl DirectedEdgeMatrix {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn arcs(&self) -> &[DirectedArc] {
        &self.arcs
    }

    pub fn inverse(&self, arc: usize) -> usize {
        if arc < self.edge_count {
            arc + self.edge_count
        } else {
            arc - self.edge_count
        }
    }

    /// Columns `j` with `(A_e)_{arc, j} = 1`, ascending.
    pub fn successors(&self, arc: usize) -> &[usize] {
        &self.successors[self.offsets[arc]..self.offsets[arc + 1]]
    }

    pub fn nonzeros(&self) -> usize {
        self.successors.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.successors(i).binary_search(&j).is_ok()
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let size = self.arc_count();
        let mut a = Mat::<f64>::zeros(size, size);
        for i in 0..size {
            for &j in self.successors(i) {
                a[(i, j)] = 1.0;
            }
        }
        a
    }

    /// `tr(A_eᵏ)` for `k = 0..=max_k`, exactly.
    ///
    /// Counts closed non-backtracking arc walks from each starting arc with
    /// `u128` accumulators and falls back to arbitrary precision on overflow.
    pub fn trace_powers(&self, max_k: usize) -> Vec<BigUint> {
        match self.trace_powers_with::<u128>(max_k) {
            Some(t) => t.into_iter().map(BigUint::from).collect(),
            None => self
                .trace_powers_with::<BigUint>(max_k)
                .expect("arbitrary precision cannot overflow"),
        }
    }

    fn trace_powers_with<T: Clone + Zero + One + CheckedAdd>(
        &self,
        max_k: usize,
    ) -> Option<Vec<T>> {
        let size = self.arc_count();
        let mut traces = vec![T::zero(); max_k + 1];
        let mut cur = vec![T::zero(); size];
        let mut next = vec![T::zero(); size];
        for start in 0..size {
            cur.iter_mut().for_each(|x| *x = T::zero());
            cur[start] = T::one();
            traces[0] = traces[0].checked_add(&T::one())?;
            for trace in traces.iter_mut().skip(1) {
                next.iter_mut().for_each(|x| *x = T::zero());
                for (arc, count) in cur.iter().enumerate() {
                    if count.is_zero() {
                        continue;
                    }
                    for &succ in self.successors(arc) {
                        next[succ] = next[succ].checked_add(count)?;
                    }
                }
                std::mem::swap(&mut cur, &mut next);
                *trace = trace.checked_add(&cur[start])?;
            }
        }
        Some(traces)
    }
}

pub fn build_edge_matrix(g: &BipartiteGraph) -> DirectedEdgeMatrix {
    let n = g.left_count();
    let e = g.edge_count();
    let mut arcs = Vec::with_capacity(2 * e);
    arcs.extend(g.edges().iter().map(|&(u, w)| DirectedArc {
        origin: u,
        terminus: n + w,
    }));
    arcs.extend(g.edges().iter().map(|&(u, w)| DirectedArc {
        origin: n + w,
        terminus: u,
    }));

    let mut offsets = Vec::with_capacity(2 * e + 1);
    let mut successors = Vec::new();
    offsets.push(0);
    for (i, &(u, w)) in g.edges().iter().enumerate() {
        // (u, w) continues with (w, x) for every other neighbor x of w.
        let start = successors.len();
        successors.extend(
            g.right_neighbors(w)
                .iter()
                .filter(|&&x| x != u)
                .map(|&x| e + g.edge_index(x, w).unwrap()),
        );
        successors[start..].sort_unstable();
        offsets.push(successors.len());
        debug_assert_eq!(i + 1, offsets.len() - 1);
    }
    for &(u, w) in g.edges() {
        // (w, u) continues with (u, y) for every other neighbor y of u.
        successors.extend(
            g.left_neighbors(u)
                .iter()
                .filter(|&&y| y != w)
                .map(|&y| g.edge_index(u, y).unwrap()),
        );
        offsets.push(successors.len());
    }

    DirectedEdgeMatrix {
        edge_count: e,
        arcs,
        offsets,
        successors,
    }
}

/// Multiset of (complex) eigenvalues of `A_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpectrum {
    eigenvalues: Vec<(Complex64, usize)>,
    total: usize,
}

impl EdgeSpectrum {
    /// Builds a spectrum, merging values closer than `tol`.
    pub fn from_pairs(pairs: &[(Complex64, usize)], tol: f64) -> Self {
        let eigenvalues = cluster_complex(pairs, tol);
        let total = eigenvalues.iter().map(|p| p.1).sum();
        Self { eigenvalues, total }
    }

    pub fn eigenvalues(&self) -> &[(Complex64, usize)] {
        &self.eigenvalues
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0, |acc, p| acc.max(p.0.norm()))
    }

    /// `Σ μᵢ ηᵢᵏ`.
    pub fn power_sum(&self, k: u32) -> Complex64 {
        self.eigenvalues
            .iter()
            .map(|&(z, mult)| z.powu(k) * mult as f64)
            .sum()
    }

    /// `Σ μᵢ |ηᵢ|ᵏ`.
    pub fn abs_power_sum(&self, k: u32) -> f64 {
        self.eigenvalues
            .iter()
            .map(|&(z, mult)| z.norm().powi(k as i32) * mult as f64)
            .sum()
    }

    /// Total multiplicity of eigenvalues within `tol` of `z`.
    pub fn multiplicity_near(&self, z: Complex64, tol: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|p| (p.0 - z).norm() < tol)
            .map(|p| p.1)
            .sum()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Vec<(Complex64, usize)> {
        self.eigenvalues.iter().map(|&(z, m)| (f(z), m)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSpectrumConfig {
    pub cluster_tolerance: Option<f64>,
    pub dense_cap: usize,
}

impl Default for EdgeSpectrumConfig {
    fn default() -> Self {
        Self {
            cluster_tolerance: None,
            dense_cap: DEFAULT_EDGE_CAP,
        }
    }
}

/// Eigenvalues of the dense `2|E|×2|E|` matrix `A_e`: the `O(|E|³)` route.
pub fn edge_spectrum_direct(
    g: &BipartiteGraph,
    config: &EdgeSpectrumConfig,
) -> Result<EdgeSpectrum> {
    let size = 2 * g.edge_count();
    if size > config.dense_cap {
        return Err(Error::DenseCapExceeded {
            dimension: size,
            cap: config.dense_cap,
        });
    }
    if size == 0 {
        return Ok(EdgeSpectrum::from_pairs(&[], 1.0));
    }
    let raw = build_edge_matrix(g)
        .to_dense()
        .eigenvalues()
        .map_err(|_| Error::NoConvergence)?;
    let points: Vec<(Complex64, usize)> = raw
        .iter()
        .map(|z| (Complex64::new(z.re, z.im), 1))
        .collect();
    let max_abs = points.iter().fold(0.0f64, |acc, p| acc.max(p.0.norm()));
    let tol = config
        .cluster_tolerance
        .unwrap_or_else(|| default_cluster_tolerance(max_abs));
    Ok(EdgeSpectrum::from_pairs(&points, tol))
}

/// The even lengths `k` with `g ≤ k ≤ max_k` for which counts are valid,
/// after checking `max_k` against the `2g − 2` bound.
pub(crate) fn validity_window(girth: Girth, max_k: Option<usize>) -> Result<(usize, usize)> {
    let g = girth.finite().ok_or(Error::Forest)?;
    let upper = 2 * g - 2;
    let max_k = max_k.unwrap_or(upper);
    if max_k > upper {
        return Err(Error::LengthOutOfWindow { k: max_k, girth: g });
    }
    if max_k < g {
        return Err(Error::LengthOutOfWindow { k: max_k, girth: g });
    }
    Ok((g, max_k))
}

/// `N_k = tr(A_eᵏ)/(2k)` for every even `k` in `[g, max_k]`, in exact
/// integer arithmetic. Works for any bipartite graph with a cycle.
pub fn trace_power_counts(g: &BipartiteGraph, max_k: Option<usize>) -> Result<CycleCounts> {
    let (girth, max_k) = validity_window(g.profile().girth, max_k)?;
    let traces = build_edge_matrix(g).trace_powers(max_k);
    let mut counts = CycleCounts::new(girth, Route::TracePower);
    for k in (girth..=max_k).step_by(2) {
        let denom = BigUint::from(2 * k);
        let t = &traces[k];
        if !(t % &denom).is_zero() {
            return Err(Error::NonIntegralCount {
                k,
                detail: format!("tr(A_e^{k}) = {t} is not divisible by {denom}"),
            });
        }
        let n_k = (t / &denom)
            .to_u64()
            .ok_or_else(|| Error::Overflow(format!("N_{k} does not fit in 64 bits")))?;
        counts.insert(k, n_k, 0.0);
    }
    Ok(counts)
}

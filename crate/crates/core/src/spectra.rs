//! Adjacency spectrum with explicit multiplicities, and rank/nullity.
//!
//! Floating-point eigensolvers return multiple eigenvalues as slightly
//! different numbers. Everything downstream needs integer multiplicities,
//! so raw eigenvalues are clustered and the result is forced to be
//! symmetric about the origin (bipartite graphs always are).

use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// Default cap on `|V|` for the dense symmetric decomposition.
pub const DEFAULT_ADJACENCY_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumConfig {
    /// `|λ|` at or below this counts as zero. Default `1e-7·max(1, |λ|max)`.
    pub zero_tolerance: Option<f64>,
    /// Raw eigenvalues closer than this are merged. Default
    /// `max(1e-8, 1e-10·|λ|max)`.
    pub cluster_tolerance: Option<f64>,
    pub dense_cap: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            zero_tolerance: None,
            cluster_tolerance: None,
            dense_cap: DEFAULT_ADJACENCY_CAP,
        }
    }
}

pub fn default_zero_tolerance(max_abs: f64) -> f64 {
    1e-7 * max_abs.max(1.0)
}

pub fn default_cluster_tolerance(max_abs: f64) -> f64 {
    f64::max(1e-8, 1e-10 * max_abs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjacencySpectrum {
    /// `(value, multiplicity)`, values strictly decreasing.
    eigenvalues: Vec<(f64, usize)>,
    total: usize,
    rank: usize,
    nullity: usize,
    zero_tolerance: f64,
    cluster_tolerance: f64,
}

impl AdjacencySpectrum {
    /// Clusters raw eigenvalues and pairs `±λ`.
    pub fn from_raw(raw: &[f64], config: &SpectrumConfig) -> Result<Self> {
        let max_abs = raw.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let zero_tol = config
            .zero_tolerance
            .unwrap_or_else(|| default_zero_tolerance(max_abs));
        let cluster_tol = config
            .cluster_tolerance
            .unwrap_or_else(|| default_cluster_tolerance(max_abs));

        let zeros = raw.iter().filter(|x| x.abs() <= zero_tol).count();
        let positive: Vec<f64> = raw.iter().copied().filter(|&x| x > zero_tol).collect();
        let negative: Vec<f64> = raw.iter().map(|x| -x).filter(|&x| x > zero_tol).collect();
        let pos = cluster_reals(positive, cluster_tol);
        let neg = cluster_reals(negative, cluster_tol);

        if pos.len() != neg.len() {
            let value = pos
                .get(neg.len())
                .or(neg.get(pos.len()))
                .map_or(0.0, |c| c.0);
            return Err(Error::AsymmetricSpectrum { value });
        }
        let mut paired = Vec::with_capacity(pos.len());
        for (&(p, mp), &(q, mq)) in pos.iter().zip(&neg) {
            if mp != mq || (p - q).abs() > cluster_tol {
                return Err(Error::AsymmetricSpectrum { value: p });
            }
            paired.push((0.5 * (p + q), mp));
        }

        // Descending: positives (largest first), zero, negatives.
        let mut eigenvalues: Vec<(f64, usize)> = paired.clone();
        if zeros > 0 {
            eigenvalues.push((0.0, zeros));
        }
        eigenvalues.extend(paired.iter().rev().map(|&(v, mult)| (-v, mult)));

        let total = raw.len();
        Ok(Self {
            eigenvalues,
            total,
            rank: total - zeros,
            nullity: zeros,
            zero_tolerance: zero_tol,
            cluster_tolerance: cluster_tol,
        })
    }

    /// Builds a spectrum from `(value, multiplicity)` pairs, e.g. one
    /// supplied by the user instead of computed.
    pub fn from_multiplicities(pairs: &[(f64, usize)], config: &SpectrumConfig) -> Result<Self> {
        let raw: Vec<f64> = pairs
            .iter()
            .flat_map(|&(v, mult)| std::iter::repeat_n(v, mult))
            .collect();
        Self::from_raw(&raw, config)
    }

    pub fn eigenvalues(&self) -> &[(f64, usize)] {
        &self.eigenvalues
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nullity(&self) -> usize {
        self.nullity
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }

    pub fn cluster_tolerance(&self) -> f64 {
        self.cluster_tolerance
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.first().map_or(0.0, |e| e.0.abs())
    }

    /// Strictly negative eigenvalues with their multiplicities.
    pub fn negative(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.eigenvalues.iter().copied().filter(|&(v, _)| v < 0.0)
    }

    /// `Σ μᵢ λᵢᵏ`, i.e. `tr(Aᵏ)` up to rounding.
    pub fn power_sum(&self, k: u32) -> f64 {
        self.eigenvalues
            .iter()
            .map(|&(v, mult)| mult as f64 * v.powi(k as i32))
            .sum()
    }

    /// `Σ μᵢ |λᵢ|ᵏ`, the scale against which rounding of
    /// [`power_sum`](Self::power_sum) is judged.
    pub fn abs_power_sum(&self, k: u32) -> f64 {
        self.eigenvalues
            .iter()
            .map(|&(v, mult)| mult as f64 * v.abs().powi(k as i32))
            .sum()
    }
}

/// Sorts descending and chains neighbors closer than `tol` into one cluster
/// whose value is the mean.
fn cluster_reals(mut values: Vec<f64>, tol: f64) -> Vec<(f64, usize)> {
    values.sort_by(|a, b| b.total_cmp(a));
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut sum = 0.0;
    let mut last = f64::NAN;
    for v in values {
        match out.last_mut() {
            Some(c) if (last - v).abs() < tol => {
                sum += v;
                c.1 += 1;
                c.0 = sum / c.1 as f64;
            }
            _ => {
                sum = v;
                out.push((v, 1));
            }
        }
        last = v;
    }
    out
}

/// Dense symmetric `(n+m)×(n+m)` adjacency matrix, `U` first.
pub fn adjacency_matrix(g: &BipartiteGraph) -> Mat<f64> {
    let n = g.left_count();
    let size = g.node_count();
    let mut a = Mat::<f64>::zeros(size, size);
    for &(u, w) in g.edges() {
        a[(u, n + w)] = 1.0;
        a[(n + w, u)] = 1.0;
    }
    a
}

/// The `n×m` biadjacency block `D` of the adjacency matrix.
pub fn biadjacency_matrix(g: &BipartiteGraph) -> Mat<f64> {
    let mut d = Mat::<f64>::zeros(g.left_count(), g.right_count());
    for &(u, w) in g.edges() {
        d[(u, w)] = 1.0;
    }
    d
}

pub fn adjacency_spectrum(
    g: &BipartiteGraph,
    config: &SpectrumConfig,
) -> Result<AdjacencySpectrum> {
    let size = g.node_count();
    if size > config.dense_cap {
        return Err(Error::DenseCapExceeded {
            dimension: size,
            cap: config.dense_cap,
        });
    }
    let raw = adjacency_matrix(g)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::NoConvergence)?;
    AdjacencySpectrum::from_raw(&raw, config)
}

/// `Rank(D)` from the singular values of the biadjacency block, with the
/// same tolerance rule as [`adjacency_spectrum`] (`σmax = λmax`).
pub fn rank_of_biadjacency(g: &BipartiteGraph, zero_tolerance: Option<f64>) -> Result<usize> {
    let sv = biadjacency_matrix(g)
        .singular_values()
        .map_err(|_| Error::NoConvergence)?;
    let max = sv.first().copied().unwrap_or(0.0);
    let tol = zero_tolerance.unwrap_or_else(|| default_zero_tolerance(max));
    Ok(sv.iter().filter(|&&s| s > tol).count())
}

/// Checks `Rank(A) = 2·Rank(D)`; the two ranks come from different
/// decompositions, so disagreement means a tolerance is wrong.
pub fn audit_rank(g: &BipartiteGraph, spec: &AdjacencySpectrum) -> Result<()> {
    let rank_d = rank_of_biadjacency(g, Some(spec.zero_tolerance()))?;
    if spec.rank() != 2 * rank_d {
        return Err(Error::RankMismatch {
            spectral: spec.rank(),
            biadjacency: rank_d,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::generate::random_bipartite;

    fn assert_spectrum(s: &AdjacencySpectrum, expected: &[(f64, usize)]) {
        assert_eq!(
            s.eigenvalues().len(),
            expected.len(),
            "{:?}",
            s.eigenvalues()
        );
        for (&(v, mult), &(ev, em)) in s.eigenvalues().iter().zip(expected) {
            assert!((v - ev).abs() < 1e-9, "{v} vs {ev}");
            assert_eq!(mult, em, "multiplicity of {ev}");
        }
    }

    #[test]
    fn complete_bipartite_spectrum() {
        for (m, n) in [(2, 2), (3, 4), (5, 2), (7, 7)] {
            let s = adjacency_spectrum(
                &families::complete_bipartite(m, n),
                &SpectrumConfig::default(),
            )
            .unwrap();
            let r = ((m * n) as f64).sqrt();
            assert_spectrum(&s, &[(r, 1), (0.0, m + n - 2), (-r, 1)]);
            assert_eq!(s.rank(), 2);
            assert_eq!(
                rank_of_biadjacency(&families::complete_bipartite(m, n), None).unwrap(),
                1
            );
        }
    }

    #[test]
    fn tesseract_spectrum() {
        let g = families::hypercube(4);
        let s = adjacency_spectrum(&g, &SpectrumConfig::default()).unwrap();
        assert_spectrum(&s, &[(4.0, 1), (2.0, 4), (0.0, 6), (-2.0, 4), (-4.0, 1)]);
        assert_eq!((s.rank(), s.nullity()), (10, 6));
        assert_eq!(rank_of_biadjacency(&g, None).unwrap(), 5);
    }

    #[test]
    fn four_cycle_spectrum() {
        // A = [[0, J], [J, 0]] with J the 2x2 all-ones block: eigenvalues ±2, 0, 0.
        let s = adjacency_spectrum(&families::cycle(4), &SpectrumConfig::default()).unwrap();
        assert_spectrum(&s, &[(2.0, 1), (0.0, 2), (-2.0, 1)]);
    }

    #[test]
    fn perfect_matching_has_full_biadjacency_rank() {
        let g = BipartiteGraph::new(3, 3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(rank_of_biadjacency(&g, None).unwrap(), 3);
        let s = adjacency_spectrum(&g, &SpectrumConfig::default()).unwrap();
        assert_spectrum(&s, &[(1.0, 3), (-1.0, 3)]);
    }

    #[test]
    fn dense_cap_is_enforced() {
        let config = SpectrumConfig {
            dense_cap: 10,
            ..Default::default()
        };
        let err = adjacency_spectrum(&families::hypercube(4), &config).unwrap_err();
        assert!(matches!(
            err,
            Error::DenseCapExceeded {
                dimension: 16,
                cap: 10
            }
        ));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let err =
            AdjacencySpectrum::from_raw(&[2.0, 0.0, -1.0], &SpectrumConfig::default()).unwrap_err();
        assert!(matches!(err, Error::AsymmetricSpectrum { .. }));
        let err = AdjacencySpectrum::from_multiplicities(
            &[(1.0, 2), (-1.0, 1)],
            &SpectrumConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::AsymmetricSpectrum { .. }));
    }

    #[test]
    fn near_duplicates_are_clustered() {
        let raw = [3.0 + 1e-12, 3.0 - 1e-12, 1e-13, -3.0, -3.0 + 2e-12];
        let s = AdjacencySpectrum::from_raw(&raw, &SpectrumConfig::default()).unwrap();
        assert_spectrum(&s, &[(3.0, 2), (0.0, 1), (-3.0, 2)]);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(60))]
        #[test]
        fn spectral_invariants_on_random_graphs(
            n in 1usize..12, m in 1usize..12, frac in 0.0f64..1.0, seed in 0u64..10_000,
        ) {
            let e = ((n * m) as f64 * frac) as usize;
            let g = random_bipartite(n, m, e, seed).unwrap();
            let s = adjacency_spectrum(&g, &SpectrumConfig::default()).unwrap();
            let v = g.node_count() as f64;
            proptest::prop_assert_eq!(s.total(), g.node_count());
            proptest::prop_assert_eq!(s.rank() + s.nullity(), g.node_count());
            proptest::prop_assert_eq!(s.rank(), 2 * rank_of_biadjacency(&g, Some(s.zero_tolerance())).unwrap());
            proptest::prop_assert!(s.power_sum(1).abs() < 1e-6 * v);
            proptest::prop_assert!((s.power_sum(2) - 2.0 * e as f64).abs() < 1e-6 * (e as f64).max(1.0));
        }
    }
}

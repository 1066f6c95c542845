//! Timing of the transfer route against the direct decomposition of `A_e`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::edge_matrix::{edge_spectrum_direct, EdgeSpectrumConfig};
use crate::error::{Error, Result};
use crate::generate::random_biregular;
use crate::graph::BipartiteGraph;
use crate::spectra::{adjacency_spectrum, SpectrumConfig};
use crate::transfer::{derive_edge_spectrum, TransferParameters};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub edges: usize,
    /// `None` when the transfer hypotheses fail.
    pub t_transfer_ms: Option<f64>,
    /// `None` when `2|E|` exceeds the dense cap.
    pub t_direct_ms: Option<f64>,
}

impl BenchRow {
    pub fn ratio(&self) -> Option<f64> {
        Some(self.t_direct_ms? / self.t_transfer_ms?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchConfig {
    pub spectrum: SpectrumConfig,
    pub edge: EdgeSpectrumConfig,
    /// Each timing is the minimum over this many runs.
    pub repeats: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            spectrum: SpectrumConfig::default(),
            edge: EdgeSpectrumConfig::default(),
            repeats: 3,
        }
    }
}

/// One row per `n` in `sizes`, with `m = n·d_v / d_c`.
pub fn bench_family(
    d_v: usize,
    d_c: usize,
    sizes: &[usize],
    seed: u64,
    config: &BenchConfig,
) -> Result<Vec<BenchRow>> {
    sizes
        .iter()
        .map(|&n| {
            if d_c == 0 || !(n * d_v).is_multiple_of(d_c) {
                return Err(Error::InfeasibleDegrees(format!(
                    "n*d_v = {} not divisible by d_c = {d_c}",
                    n * d_v
                )));
            }
            let g = random_biregular(n, n * d_v / d_c, d_v, d_c, seed)?;
            bench_graph(&g, config)
        })
        .collect()
}

pub fn bench_graph(g: &BipartiteGraph, config: &BenchConfig) -> Result<BenchRow> {
    let repeats = config.repeats.max(1);
    let profile = g.profile();
    let transfer_once = || -> Result<()> {
        let spec = adjacency_spectrum(g, &config.spectrum)?;
        let params = TransferParameters::new(g, &profile, &spec)?;
        derive_edge_spectrum(&spec, &params)?;
        Ok(())
    };
    let t_transfer_ms = match min_time(repeats, transfer_once) {
        Ok(t) => Some(t),
        Err(e) if e.kind() == crate::ErrorKind::Inapplicable => None,
        Err(e) => return Err(e),
    };
    let t_direct_ms = match min_time(repeats, || edge_spectrum_direct(g, &config.edge).map(drop)) {
        Ok(t) => Some(t),
        Err(Error::DenseCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(BenchRow {
        n: g.left_count(),
        m: g.right_count(),
        edges: g.edge_count(),
        t_transfer_ms,
        t_direct_ms,
    })
}

fn min_time(repeats: usize, mut f: impl FnMut() -> Result<()>) -> Result<f64> {
    let mut best = f64::INFINITY;
    for _ in 0..repeats {
        let start = Instant::now();
        f()?;
        best = best.min(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(best)
}

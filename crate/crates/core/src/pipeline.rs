//! End-to-end routes from a graph to cycle counts.

use crate::cycles::{counts_from_spectrum, CycleCounts, Route};
use crate::edge_matrix::{edge_spectrum_direct, EdgeSpectrum, EdgeSpectrumConfig};
use crate::error::Result;
use crate::graph::BipartiteGraph;
use crate::spectra::{adjacency_spectrum, audit_rank, AdjacencySpectrum, SpectrumConfig};
use crate::transfer::{derive_edge_spectrum, Transfer, TransferParameters};

#[derive(Debug, Clone)]
pub struct TransferRun {
    pub adjacency: AdjacencySpectrum,
    pub params: TransferParameters,
    pub transfer: Transfer,
    pub counts: CycleCounts,
}

/// Adjacency spectrum, rank audit, edge spectrum, counts.
pub fn run_transfer(
    g: &BipartiteGraph,
    config: &SpectrumConfig,
    max_k: Option<usize>,
) -> Result<TransferRun> {
    let profile = g.profile();
    // Check structural hypotheses before paying for the decomposition.
    if profile.d_v.is_none() {
        return Err(crate::Error::NotBiregular);
    }
    if !profile.is_connected {
        return Err(crate::Error::Disconnected);
    }
    let spec = adjacency_spectrum(g, config)?;
    run_transfer_with_spectrum(g, spec, max_k)
}

/// Same as [`run_transfer`] but with a caller-supplied adjacency spectrum.
pub fn run_transfer_with_spectrum(
    g: &BipartiteGraph,
    adjacency: AdjacencySpectrum,
    max_k: Option<usize>,
) -> Result<TransferRun> {
    let profile = g.profile();
    let params = TransferParameters::new(g, &profile, &adjacency)?;
    audit_rank(g, &adjacency)?;
    let transfer = derive_edge_spectrum(&adjacency, &params)?;
    let counts = counts_from_spectrum(
        &transfer.spectrum,
        profile.girth,
        max_k,
        Route::SpectralTransfer,
    )?;
    Ok(TransferRun {
        adjacency,
        params,
        transfer,
        counts,
    })
}

/// Dense decomposition of `A_e` followed by the spectral count.
pub fn run_direct(
    g: &BipartiteGraph,
    config: &EdgeSpectrumConfig,
    max_k: Option<usize>,
) -> Result<(EdgeSpectrum, CycleCounts)> {
    let girth = g.profile().girth;
    crate::edge_matrix::validity_window(girth, max_k)?;
    let es = edge_spectrum_direct(g, config)?;
    let counts = counts_from_spectrum(&es, girth, max_k, Route::DirectEdgeSpectrum)?;
    Ok((es, counts))
}

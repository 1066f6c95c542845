//! Short cycle counts in bipartite graphs from the spectrum of the directed
//! edge (non-backtracking) matrix.
//!
//! For connected bi-regular graphs the edge spectrum is obtained from the
//! adjacency spectrum by [`transfer::derive_edge_spectrum`], avoiding the
//! dense nonsymmetric decomposition of the `2|E|×2|E|` matrix. Irregular
//! graphs go through exact trace powers of the sparse matrix instead.

pub mod bench;
pub mod cycles;
pub mod edge_matrix;
pub mod error;
pub mod families;
pub mod generate;
pub mod graph;
pub mod io;
pub mod multiset;
pub mod pipeline;
pub mod spectra;
pub mod transfer;

pub use cycles::{CycleCounts, Route};
pub use edge_matrix::{DirectedEdgeMatrix, EdgeSpectrum};
pub use error::{Error, ErrorKind, Result};
pub use graph::{BipartiteGraph, Girth, GraphProfile};
pub use spectra::AdjacencySpectrum;

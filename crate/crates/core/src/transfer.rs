//! Edge spectrum of a connected bi-regular bipartite graph derived from its
//! adjacency spectrum, at `O(|V|³)` cost instead of `O(|E|³)`.
//!
//! With `q₁ = d_v − 1`, `q₂ = d_c − 1` the eigenvalues of `A_e` are:
//!
//! 1. for every `λ < 0` of multiplicity `μ`, the two roots `ξ` of
//!    `ξ² + (q₁ + q₂ − λ²)ξ + q₁q₂ = 0` other than `ξ = 1` each give `±√ξ`
//!    with multiplicity `μ`;
//! 2. `±√−q₁` with multiplicity `n − Rank(A)/2` and `±√−q₂` with
//!    multiplicity `m − Rank(A)/2`;
//! 3. `±1`, each with multiplicity `|E| − |V| + 1`.
//!
//! The construction requires `q₂ ≥ 2`, `q₁ ≥ 1`, `q₂ ≥ q₁`; sides are swapped
//! when `d_v > d_c`, which leaves the spectrum of `A_e` unchanged.

use num_complex::Complex64;

use crate::edge_matrix::EdgeSpectrum;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, GraphProfile};
use crate::spectra::AdjacencySpectrum;

/// `|ξ − 1|` below which a root is taken to be the discarded `ξ = 1`.
pub const UNIT_ROOT_TOLERANCE: f64 = 1e-6;
/// `|λ² − d_v·d_c|` below which `λ` is accepted as `±√(d_v·d_c)`.
pub const PERRON_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferParameters {
    pub q1: usize,
    pub q2: usize,
    /// Size of the side with degree `q1 + 1`.
    pub n: usize,
    /// Size of the side with degree `q2 + 1`.
    pub m: usize,
    pub edge_count: usize,
    pub rank: usize,
    pub nullity: usize,
    /// Whether the graph's right side plays the role of `U`.
    pub swapped: bool,
}

impl TransferParameters {
    /// Validates the hypotheses and normalizes orientation so `q2 ≥ q1`.
    pub fn new(
        g: &BipartiteGraph,
        profile: &GraphProfile,
        spec: &AdjacencySpectrum,
    ) -> Result<Self> {
        let (Some(d_v), Some(d_c)) = (profile.d_v, profile.d_c) else {
            return Err(Error::NotBiregular);
        };
        if !profile.is_connected {
            return Err(Error::Disconnected);
        }
        let swapped = d_v > d_c;
        let (d1, d2, n, m) = if swapped {
            (d_c, d_v, g.right_count(), g.left_count())
        } else {
            (d_v, d_c, g.left_count(), g.right_count())
        };
        if d1 < 2 || d2 < 3 {
            return Err(Error::DegreeHypothesis { d_v, d_c });
        }
        if spec.total() != g.node_count() {
            return Err(Error::SpectrumSize {
                expected: g.node_count(),
                actual: spec.total(),
            });
        }
        Ok(Self {
            q1: d1 - 1,
            q2: d2 - 1,
            n,
            m,
            edge_count: g.edge_count(),
            rank: spec.rank(),
            nullity: spec.nullity(),
            swapped,
        })
    }

    fn degree_product(&self) -> f64 {
        ((self.q1 + 1) * (self.q2 + 1)) as f64
    }
}

/// The two roots of the transfer quadratic for one `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiRoots {
    pub xi1: Complex64,
    pub xi2: Complex64,
}

/// Roots of `ξ² + (q₁ + q₂ − λ²)ξ + q₁q₂ = 0`.
///
/// Real roots use the sign-aware form for the larger one and the product
/// `q₁q₂` for the smaller, so neither suffers cancellation.
pub fn solve_transfer_quadratic(lambda: f64, params: &TransferParameters) -> XiRoots {
    let b = (params.q1 + params.q2) as f64 - lambda * lambda;
    let c = (params.q1 * params.q2) as f64;
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let big = -0.5 * (b + b.signum() * disc.sqrt());
        let small = c / big;
        XiRoots {
            xi1: Complex64::new(big, 0.0),
            xi2: Complex64::new(small, 0.0),
        }
    } else {
        let im = 0.5 * (-disc).sqrt();
        XiRoots {
            xi1: Complex64::new(-0.5 * b, im),
            xi2: Complex64::new(-0.5 * b, -im),
        }
    }
}

/// Eigenvalue counts emitted by each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepTotals {
    pub negative_eigenvalues: usize,
    pub null_space: usize,
    pub unit: usize,
}

impl StepTotals {
    pub fn sum(&self) -> usize {
        self.negative_eigenvalues + self.null_space + self.unit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transfer {
    pub spectrum: EdgeSpectrum,
    pub steps: StepTotals,
}

/// Derives the spectrum of `A_e` from the adjacency spectrum.
///
/// All multiplicities are integers taken from the clustered spectrum and
/// every step total is checked against its closed form.
pub fn derive_edge_spectrum(
    spec: &AdjacencySpectrum,
    params: &TransferParameters,
) -> Result<Transfer> {
    let (n, m, e) = (params.n, params.m, params.edge_count);
    let vertices = n + m;
    if spec.total() != vertices {
        return Err(Error::SpectrumSize {
            expected: vertices,
            actual: spec.total(),
        });
    }
    let rank = spec.rank();
    if !rank.is_multiple_of(2) {
        return Err(Error::OddRank(rank));
    }
    let nullity = spec.nullity();
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    let emit_pair = |z: Complex64, mult: usize, out: &mut Vec<(Complex64, usize)>| {
        if mult > 0 {
            out.push((z, mult));
            out.push((-z, mult));
        }
        2 * mult
    };

    // Step 1.
    let mut step1 = 0;
    for (lambda, mult) in spec.negative() {
        let roots = solve_transfer_quadratic(lambda, params);
        for xi in [roots.xi1, roots.xi2] {
            if (xi - 1.0).norm() < UNIT_ROOT_TOLERANCE {
                if (lambda * lambda - params.degree_product()).abs() >= PERRON_TOLERANCE {
                    return Err(Error::SpuriousUnitRoot { lambda });
                }
                continue;
            }
            step1 += emit_pair(xi.sqrt(), mult, &mut out);
        }
    }
    let expected1 = (2 * vertices).checked_sub(2 * nullity + 2);
    if expected1 != Some(step1) {
        return Err(Error::StepCount {
            step: "negative-eigenvalue step",
            expected: expected1.unwrap_or(0),
            actual: step1,
        });
    }

    // Step 2.
    let half_rank = rank / 2;
    let (Some(mult_q1), Some(mult_q2)) = (n.checked_sub(half_rank), m.checked_sub(half_rank))
    else {
        return Err(Error::StepCount {
            step: "null-space step",
            expected: 2 * nullity,
            actual: 0,
        });
    };
    let mut step2 = 0;
    step2 += emit_pair(
        Complex64::new(0.0, (params.q1 as f64).sqrt()),
        mult_q1,
        &mut out,
    );
    step2 += emit_pair(
        Complex64::new(0.0, (params.q2 as f64).sqrt()),
        mult_q2,
        &mut out,
    );
    if step2 != 2 * nullity {
        return Err(Error::StepCount {
            step: "null-space step",
            expected: 2 * nullity,
            actual: step2,
        });
    }

    // Step 3.
    let Some(cyclomatic) = (e + 1).checked_sub(vertices) else {
        return Err(Error::StepCount {
            step: "unit step",
            expected: 0,
            actual: 0,
        });
    };
    let step3 = emit_pair(Complex64::new(1.0, 0.0), cyclomatic, &mut out);

    let steps = StepTotals {
        negative_eigenvalues: step1,
        null_space: step2,
        unit: step3,
    };
    if steps.sum() != 2 * e {
        return Err(Error::SpectrumSize {
            expected: 2 * e,
            actual: steps.sum(),
        });
    }

    let tol = spec.cluster_tolerance().max(1e-12);
    Ok(Transfer {
        spectrum: EdgeSpectrum::from_pairs(&out, tol),
        steps,
    })
}

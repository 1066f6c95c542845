//! JSON report written by `count` and `verify`.

use std::collections::BTreeMap;

use girthspec::cycles::CycleCounts;
use girthspec::{AdjacencySpectrum, BipartiteGraph, EdgeSpectrum, Error, ErrorKind};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "girthspec/1";

pub mod exit {
    pub const OK: i32 = 0;
    pub const DISAGREEMENT: i32 = 1;
    pub const INAPPLICABLE: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const INPUT: i32 = 4;
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Input => exit::INPUT,
        ErrorKind::Inapplicable => exit::INAPPLICABLE,
        ErrorKind::Numerical => exit::NUMERICAL,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub input: InputInfo,
    pub profile: Option<ProfileSummary>,
    pub routes: Vec<RouteRun>,
    /// Counts of the first route that succeeded, in fixed route order.
    pub counts: BTreeMap<usize, u64>,
    pub agreement: bool,
    pub diffs: Vec<CountDiff>,
    pub residuals: BTreeMap<usize, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectra: Option<Spectra>,
    pub error: Option<ErrorInfo>,
}

impl RunReport {
    pub fn new(input: InputInfo) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            input,
            profile: None,
            routes: Vec::new(),
            counts: BTreeMap::new(),
            agreement: false,
            diffs: Vec::new(),
            residuals: BTreeMap::new(),
            cross_check: None,
            spectra: None,
            error: None,
        }
    }

    /// Fills `counts`, `residuals`, `agreement` and `diffs` from the routes.
    pub fn settle(&mut self) {
        let done: Vec<&RouteRun> = self
            .routes
            .iter()
            .filter(|r| r.status == RouteStatus::Ok)
            .collect();
        if let Some(first) = done.first() {
            self.counts = first.counts.clone();
            self.residuals = first.residuals.clone();
        }
        let mut ks: Vec<usize> = done.iter().flat_map(|r| r.counts.keys().copied()).collect();
        ks.sort_unstable();
        ks.dedup();
        self.diffs = ks
            .into_iter()
            .filter_map(|k| {
                let values: BTreeMap<String, Option<u64>> = done
                    .iter()
                    .map(|r| (r.route.clone(), r.counts.get(&k).copied()))
                    .collect();
                let first = values.values().next().copied().flatten();
                let agree = values.values().all(|v| *v == first && v.is_some());
                (!agree).then_some(CountDiff { k, values })
            })
            .collect();
        let failed = self.routes.iter().any(|r| r.status == RouteStatus::Failed);
        let cross_ok = self.cross_check.as_ref().is_none_or(|c| c.agrees);
        self.agreement = !done.is_empty() && self.diffs.is_empty() && !failed && cross_ok;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: Option<String>,
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated: Option<Generated>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generated {
    pub n: usize,
    pub m: usize,
    pub d_v: usize,
    pub d_c: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub n: usize,
    pub m: usize,
    pub edges: usize,
    pub d_v: Option<usize>,
    pub d_c: Option<usize>,
    /// `None` for a forest.
    pub girth: Option<usize>,
    pub connected: bool,
    pub biregular: bool,
}

impl ProfileSummary {
    pub fn of(g: &BipartiteGraph) -> Self {
        let p = g.profile();
        Self {
            n: g.left_count(),
            m: g.right_count(),
            edges: g.edge_count(),
            d_v: p.d_v,
            d_c: p.d_c,
            girth: p.girth.finite(),
            connected: p.is_connected,
            biregular: p.is_biregular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteStatus {
    Ok,
    /// Hypotheses or size caps rule the route out; not a disagreement.
    Skipped,
    /// The route applied but a numerical check failed.
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteRun {
    pub route: String,
    pub status: RouteStatus,
    /// Wall-clock milliseconds; `None` when the route was not attempted.
    pub ms: Option<f64>,
    pub counts: BTreeMap<usize, u64>,
    pub residuals: BTreeMap<usize, f64>,
    pub message: Option<String>,
}

impl RouteRun {
    pub fn from_result(route: &str, ms: Option<f64>, result: &Result<CycleCounts, Error>) -> Self {
        match result {
            Ok(c) => Self {
                route: route.to_string(),
                status: RouteStatus::Ok,
                ms,
                counts: c.counts.clone(),
                residuals: if c.route.is_spectral() {
                    c.residuals.clone()
                } else {
                    BTreeMap::new()
                },
                message: None,
            },
            Err(e) => Self {
                route: route.to_string(),
                status: if e.kind() == ErrorKind::Numerical {
                    RouteStatus::Failed
                } else {
                    RouteStatus::Skipped
                },
                ms,
                counts: BTreeMap::new(),
                residuals: BTreeMap::new(),
                message: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountDiff {
    pub k: usize,
    pub values: BTreeMap<String, Option<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub length: usize,
    /// Decimal string: the value may be negative or exceed 64 bits.
    pub decomposition: Option<String>,
    pub spectral: Option<u64>,
    pub agrees: bool,
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealEigenvalue {
    pub value: f64,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexEigenvalue {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Spectra {
    pub adjacency: Option<Vec<RealEigenvalue>>,
    /// Keyed by route name.
    pub edge: BTreeMap<String, Vec<ComplexEigenvalue>>,
}

pub fn adjacency_entries(spec: &AdjacencySpectrum) -> Vec<RealEigenvalue> {
    spec.eigenvalues()
        .iter()
        .map(|&(value, mult)| RealEigenvalue { value, mult })
        .collect()
}

pub fn edge_entries(es: &EdgeSpectrum) -> Vec<ComplexEigenvalue> {
    es.eigenvalues()
        .iter()
        .map(|(z, mult)| ComplexEigenvalue {
            re: z.re,
            im: z.im,
            mult: *mult,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub code: i32,
    pub message: String,
}

impl ErrorInfo {
    pub fn from_error(e: &Error) -> Self {
        let kind = match e.kind() {
            ErrorKind::Input => "input",
            ErrorKind::Inapplicable => "inapplicable",
            ErrorKind::Numerical => "numerical",
        };
        Self {
            kind: kind.to_string(),
            code: exit_code(e.kind()),
            message: e.to_string(),
        }
    }
}

//! Command-line front end: `count`, `verify` and `bench`.

pub mod report;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use girthspec::bench::{bench_family, BenchConfig};
use girthspec::cycles::{brute_force_counts, g_plus_4_cross_check, BruteForceLimits, CycleCounts};
use girthspec::edge_matrix::{trace_power_counts, EdgeSpectrumConfig, DEFAULT_EDGE_CAP};
use girthspec::generate::random_biregular;
use girthspec::io::{read_graph, Format};
use girthspec::pipeline::{run_direct, run_transfer, run_transfer_with_spectrum, TransferRun};
use girthspec::spectra::{SpectrumConfig, DEFAULT_ADJACENCY_CAP};
use girthspec::{AdjacencySpectrum, BipartiteGraph, Error, Result};

use report::{
    adjacency_entries, edge_entries, exit, CrossCheck, ErrorInfo, Generated, InputInfo,
    ProfileSummary, RealEigenvalue, RouteRun, RouteStatus, RunReport, Spectra,
};

pub const DENSE_CAP_VAR: &str = "GIRTHSPEC_DENSE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "girthspec",
    version,
    about = "Count short cycles in bipartite graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count cycles of length g..2g-2 with one route.
    Count {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// Run every applicable route and compare the counts.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Time the transfer route against the direct decomposition (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    Transfer,
    Trace,
    Direct,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Auto,
    Alist,
    Edgelist,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Graph file (edge list or alist).
    #[arg(long, required_unless_present = "generate")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub format: FormatArg,
    /// Generate a random bi-regular graph instead: D_V,D_C,N (M = N*D_V/D_C).
    #[arg(long, value_name = "D_V,D_C,N", conflicts_with = "input", value_parser = parse_generate)]
    pub generate: Option<(usize, usize, usize)>,
    /// Largest cycle length (even, at most 2g-2).
    #[arg(long)]
    pub max_k: Option<usize>,
    #[arg(long)]
    pub zero_tol: Option<f64>,
    #[arg(long)]
    pub cluster_tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include adjacency and edge spectra in the report.
    #[arg(long)]
    pub emit_spectra: bool,
    /// Lift the brute-force size limits.
    #[arg(long)]
    pub force: bool,
    /// Use this adjacency spectrum (JSON list of {value, mult}) for the
    /// transfer route instead of computing it.
    #[arg(long, value_name = "FILE")]
    pub adjacency_spectrum: Option<PathBuf>,
    #[arg(long, conflicts_with = "table")]
    pub json: bool,
    /// Human-readable table instead of JSON.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub dv: usize,
    #[arg(long)]
    pub dc: usize,
    /// Comma-separated left-side sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Each timing is the minimum over this many runs.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
}

fn parse_generate(s: &str) -> std::result::Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err("expected D_V,D_C,N".into());
    };
    let p = |t: &str| t.parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(a)?, p(b)?, p(c)?))
}

/// What the binary prints and the process exit code.
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cli: Cli) -> Output {
    let caps = match dense_caps() {
        Ok(c) => c,
        Err(message) => {
            return Output {
                stdout: format!(
                    "{{\"error\":{{\"kind\":\"input\",\"code\":4,\"message\":{message:?}}}}}\n"
                ),
                code: exit::INPUT,
            }
        }
    };
    match cli.command {
        Command::Count { common, route } => render(&common, count(&common, route, caps)),
        Command::Verify { common } => render(&common, verify(&common, caps)),
        Command::Bench(args) => bench(&args, caps),
    }
}

#[derive(Debug, Clone, Copy)]
struct Caps {
    adjacency: usize,
    edge: usize,
}

fn dense_caps() -> std::result::Result<Caps, String> {
    match std::env::var(DENSE_CAP_VAR) {
        Ok(v) => {
            let cap = v
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("{DENSE_CAP_VAR}={v:?} is not a nonnegative integer"))?;
            Ok(Caps {
                adjacency: cap,
                edge: cap,
            })
        }
        Err(_) => Ok(Caps {
            adjacency: DEFAULT_ADJACENCY_CAP,
            edge: DEFAULT_EDGE_CAP,
        }),
    }
}

struct Loaded {
    graph: BipartiteGraph,
    input: InputInfo,
}

fn load(common: &CommonArgs) -> Result<Loaded> {
    if let Some((d_v, d_c, n)) = common.generate {
        if d_c == 0 || (n * d_v) % d_c != 0 {
            return Err(Error::InfeasibleDegrees(format!(
                "n*d_v = {} not divisible by d_c = {d_c}",
                n * d_v
            )));
        }
        let m = n * d_v / d_c;
        let graph = random_biregular(n, m, d_v, d_c, common.seed)?;
        return Ok(Loaded {
            graph,
            input: InputInfo {
                path: None,
                format: None,
                generated: Some(Generated {
                    n,
                    m,
                    d_v,
                    d_c,
                    seed: common.seed,
                }),
                warnings: Vec::new(),
            },
        });
    }
    let path = common
        .input
        .as_deref()
        .expect("clap enforces --input or --generate");
    let format = match common.format {
        FormatArg::Auto => Format::from_path(path),
        FormatArg::Alist => Format::Alist,
        FormatArg::Edgelist => Format::EdgeList,
    };
    let parsed = read_graph(path, Some(format))?;
    Ok(Loaded {
        graph: parsed.graph,
        input: InputInfo {
            path: Some(path.display().to_string()),
            format: Some(format.name().to_string()),
            generated: None,
            warnings: parsed.warnings,
        },
    })
}

fn read_spectrum_file(path: &Path, config: &SpectrumConfig) -> Result<AdjacencySpectrum> {
    let text = std::fs::read_to_string(path)?;
    let entries: Vec<RealEigenvalue> = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: format!("adjacency spectrum: {e}"),
    })?;
    let pairs: Vec<(f64, usize)> = entries.iter().map(|e| (e.value, e.mult)).collect();
    AdjacencySpectrum::from_multiplicities(&pairs, config)
}

struct Session<'a> {
    common: &'a CommonArgs,
    graph: BipartiteGraph,
    spectrum_config: SpectrumConfig,
    edge_config: EdgeSpectrumConfig,
    report: RunReport,
    adjacency: Option<AdjacencySpectrum>,
}

impl<'a> Session<'a> {
    fn open(common: &'a CommonArgs, caps: Caps) -> std::result::Result<Self, Box<RunReport>> {
        let loaded = match load(common) {
            Ok(l) => l,
            Err(e) => {
                let mut report = RunReport::new(InputInfo {
                    path: common.input.as_ref().map(|p| p.display().to_string()),
                    format: None,
                    generated: None,
                    warnings: Vec::new(),
                });
                report.error = Some(ErrorInfo::from_error(&e));
                return Err(Box::new(report));
            }
        };
        let mut report = RunReport::new(loaded.input);
        report.profile = Some(ProfileSummary::of(&loaded.graph));
        Ok(Self {
            common,
            graph: loaded.graph,
            spectrum_config: SpectrumConfig {
                zero_tolerance: common.zero_tol,
                cluster_tolerance: common.cluster_tol,
                dense_cap: caps.adjacency,
            },
            edge_config: EdgeSpectrumConfig {
                cluster_tolerance: common.cluster_tol,
                dense_cap: caps.edge,
            },
            report,
            adjacency: None,
        })
    }

    fn record(&mut self, route: &str, start: Instant, result: &Result<CycleCounts>) {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        self.report
            .routes
            .push(RouteRun::from_result(route, Some(ms), result));
    }

    fn transfer(&mut self) -> Result<CycleCounts> {
        let start = Instant::now();
        let result: Result<TransferRun> = match &self.common.adjacency_spectrum {
            Some(path) => read_spectrum_file(path, &self.spectrum_config)
                .and_then(|spec| run_transfer_with_spectrum(&self.graph, spec, self.common.max_k)),
            None => run_transfer(&self.graph, &self.spectrum_config, self.common.max_k),
        };
        let counts = result.map(|run| {
            if self.common.emit_spectra {
                let spectra = self.report.spectra.get_or_insert_with(Spectra::default);
                spectra.adjacency = Some(adjacency_entries(&run.adjacency));
                spectra
                    .edge
                    .insert("transfer".into(), edge_entries(&run.transfer.spectrum));
            }
            self.adjacency = Some(run.adjacency);
            run.counts
        });
        self.record("transfer", start, &counts);
        counts
    }

    fn trace(&mut self) -> Result<CycleCounts> {
        let start = Instant::now();
        let counts = trace_power_counts(&self.graph, self.common.max_k);
        self.record("trace", start, &counts);
        counts
    }

    fn direct(&mut self) -> Result<CycleCounts> {
        let start = Instant::now();
        let counts =
            run_direct(&self.graph, &self.edge_config, self.common.max_k).map(|(es, counts)| {
                if self.common.emit_spectra {
                    let spectra = self.report.spectra.get_or_insert_with(Spectra::default);
                    spectra.edge.insert("direct".into(), edge_entries(&es));
                }
                counts
            });
        self.record("direct", start, &counts);
        counts
    }

    fn brute(&mut self) -> Result<CycleCounts> {
        let start = Instant::now();
        let limits = BruteForceLimits {
            force: self.common.force,
            ..Default::default()
        };
        // Same window as the other routes so the counts are comparable.
        let max_k = match (self.common.max_k, self.graph.profile().girth.finite()) {
            (Some(k), Some(g)) if k > 2 * g - 2 => Err(Error::LengthOutOfWindow { k, girth: g }),
            (k, _) => Ok(k),
        };
        let counts = max_k.and_then(|k| brute_force_counts(&self.graph, k, limits));
        self.record("brute", start, &counts);
        counts
    }
}

fn count(common: &CommonArgs, route: RouteArg, caps: Caps) -> (RunReport, i32) {
    let mut s = match Session::open(common, caps) {
        Ok(s) => s,
        Err(report) => return (*report, exit::INPUT),
    };
    let result = match route {
        RouteArg::Transfer => s.transfer(),
        RouteArg::Trace => s.trace(),
        RouteArg::Direct => s.direct(),
        RouteArg::Brute => s.brute(),
        RouteArg::Auto => match s.transfer() {
            Err(e) if e.kind() == girthspec::ErrorKind::Inapplicable => s.trace(),
            other => other,
        },
    };
    s.report.settle();
    let code = match result {
        Ok(_) => exit::OK,
        Err(e) => {
            let info = ErrorInfo::from_error(&e);
            let code = info.code;
            s.report.error = Some(info);
            code
        }
    };
    (s.report, code)
}

fn verify(common: &CommonArgs, caps: Caps) -> (RunReport, i32) {
    let mut s = match Session::open(common, caps) {
        Ok(s) => s,
        Err(report) => return (*report, exit::INPUT),
    };
    let _ = s.transfer();
    let _ = s.trace();
    let _ = s.direct();
    let _ = s.brute();

    let girth = s.graph.profile().girth.finite();
    let reference = s
        .report
        .routes
        .iter()
        .find(|r| r.status == RouteStatus::Ok)
        .map(|r| r.counts.clone());
    if let (Some(g), Some(reference)) = (girth, reference) {
        if g >= 6 {
            s.report.cross_check = Some(cross_check(&mut s, g, &reference));
        }
    }
    s.report.settle();

    let attempted = s
        .report
        .routes
        .iter()
        .any(|r| r.status != RouteStatus::Skipped);
    let code = if !attempted {
        let message = s
            .report
            .routes
            .iter()
            .filter_map(|r| r.message.as_deref().map(|m| format!("{}: {m}", r.route)))
            .collect::<Vec<_>>()
            .join("; ");
        s.report.error = Some(ErrorInfo {
            kind: "inapplicable".into(),
            code: exit::INAPPLICABLE,
            message,
        });
        exit::INAPPLICABLE
    } else if s.report.agreement {
        exit::OK
    } else {
        exit::DISAGREEMENT
    };
    (s.report, code)
}

fn cross_check(s: &mut Session<'_>, g: usize, reference: &BTreeMap<usize, u64>) -> CrossCheck {
    let length = g + 4;
    let spectral = reference.get(&length).copied();
    let mut counts = CycleCounts::new(g, girthspec::Route::TracePower);
    for (&k, &n) in reference {
        counts.insert(k, n, 0.0);
    }
    let adjacency = match s.adjacency.clone() {
        Some(a) => Ok(a),
        None => girthspec::spectra::adjacency_spectrum(&s.graph, &s.spectrum_config),
    };
    match adjacency.and_then(|a| g_plus_4_cross_check(&s.graph, &a, &counts)) {
        Ok(x) => CrossCheck {
            length,
            agrees: spectral.is_some() && x.count_u64() == spectral,
            decomposition: Some(x.count.to_string()),
            spectral,
            message: None,
        },
        Err(e) => CrossCheck {
            length,
            decomposition: None,
            spectral,
            // Hypotheses not met is not a disagreement.
            agrees: e.kind() != girthspec::ErrorKind::Numerical,
            message: Some(e.to_string()),
        },
    }
}

fn render(common: &CommonArgs, (report, code): (RunReport, i32)) -> Output {
    let stdout = if common.table {
        table(&report)
    } else {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    };
    Output { stdout, code }
}

fn table(r: &RunReport) -> String {
    let mut out = String::new();
    if let Some(p) = &r.profile {
        let deg = |d: Option<usize>| d.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(
            out,
            "graph: n={} m={} |E|={} d_v={} d_c={} girth={} connected={} biregular={}",
            p.n,
            p.m,
            p.edges,
            deg(p.d_v),
            deg(p.d_c),
            p.girth.map_or("inf".to_string(), |g| g.to_string()),
            p.connected,
            p.biregular
        );
    }
    let ks: Vec<usize> = {
        let mut ks: Vec<usize> = r
            .routes
            .iter()
            .flat_map(|x| x.counts.keys().copied())
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    };
    if !r.routes.is_empty() {
        let _ = write!(out, "{:<10} {:<8} {:>10}", "route", "status", "ms");
        for k in &ks {
            let _ = write!(out, " {:>12}", format!("N_{k}"));
        }
        out.push('\n');
        for run in &r.routes {
            let status = match run.status {
                RouteStatus::Ok => "ok",
                RouteStatus::Skipped => "skipped",
                RouteStatus::Failed => "failed",
            };
            let ms = run.ms.map_or("-".to_string(), |m| format!("{m:.2}"));
            let _ = write!(out, "{:<10} {:<8} {:>10}", run.route, status, ms);
            for k in &ks {
                let v = run.counts.get(k).map_or("-".to_string(), |v| v.to_string());
                let _ = write!(out, " {v:>12}");
            }
            if let Some(m) = &run.message {
                let _ = write!(out, "  ({m})");
            }
            out.push('\n');
        }
    }
    if let Some(x) = &r.cross_check {
        let _ = writeln!(
            out,
            "g+4 cross-check: N_{} decomposition={} spectral={} agrees={}{}",
            x.length,
            x.decomposition.as_deref().unwrap_or("-"),
            x.spectral.map_or("-".to_string(), |v| v.to_string()),
            x.agrees,
            x.message
                .as_ref()
                .map_or(String::new(), |m| format!(" ({m})"))
        );
    }
    for d in &r.diffs {
        let vals: Vec<String> = d
            .values
            .iter()
            .map(|(route, v)| format!("{route}={}", v.map_or("-".to_string(), |v| v.to_string())))
            .collect();
        let _ = writeln!(out, "diff N_{}: {}", d.k, vals.join(" "));
    }
    let _ = writeln!(out, "agreement: {}", r.agreement);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
    }
    out
}

fn bench(args: &BenchArgs, caps: Caps) -> Output {
    let config = BenchConfig {
        spectrum: SpectrumConfig {
            dense_cap: caps.adjacency,
            ..Default::default()
        },
        edge: EdgeSpectrumConfig {
            dense_cap: caps.edge,
            ..Default::default()
        },
        repeats: args.repeats,
    };
    match bench_family(args.dv, args.dc, &args.sizes, args.seed, &config) {
        Ok(rows) => {
            let mut out = String::from("n,m,edges,t_transfer_ms,t_direct_ms\n");
            let cell = |t: Option<f64>| t.map_or("n/a".to_string(), |t| format!("{t:.3}"));
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    r.m,
                    r.edges,
                    cell(r.t_transfer_ms),
                    cell(r.t_direct_ms)
                );
            }
            Output {
                stdout: out,
                code: exit::OK,
            }
        }
        Err(e) => {
            let info = ErrorInfo::from_error(&e);
            let code = info.code;
            Output {
                stdout: format!(
                    "{}\n",
                    serde_json::json!({ "schema": report::SCHEMA, "error": info })
                ),
                code,
            }
        }
    }
}

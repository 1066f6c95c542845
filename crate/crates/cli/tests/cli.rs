use std::path::PathBuf;
use std::process::Command;

use girthspec_cli::report::{RouteStatus, RunReport};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn girthspec(args: &[&str], env: &[(&str, &str)]) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_girthspec"));
    cmd.args(args).env_remove("GIRTHSPEC_DENSE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

fn report(args: &[&str]) -> (RunReport, i32) {
    let (stdout, code) = girthspec(args, &[]);
    let r: RunReport = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (r, code)
}

fn counts(r: &RunReport) -> Vec<(usize, u64)> {
    r.counts.iter().map(|(&k, &v)| (k, v)).collect()
}

#[test]
fn count_tesseract_auto_uses_transfer() {
    let (r, code) = report(&["count", "--input", &data("q4.el"), "--route", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(r.schema, "girthspec/1");
    assert_eq!(r.counts.get(&4), Some(&24));
    assert_eq!(r.routes.len(), 1);
    assert_eq!(r.routes[0].route, "transfer");
    assert!(r.error.is_none());
}

#[test]
fn count_complete_bipartite_alist() {
    let (r, code) = report(&[
        "count",
        "--input",
        &data("k34.alist"),
        "--route",
        "transfer",
        "--max-k",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(counts(&r), vec![(4, 18), (6, 24)]);
    let p = r.profile.unwrap();
    assert_eq!((p.n, p.m, p.edges), (4, 3, 12));
}

#[test]
fn count_irregular_with_transfer_is_inapplicable() {
    let (r, code) = report(&[
        "count",
        "--input",
        &data("irregular.el"),
        "--route",
        "transfer",
    ]);
    assert_eq!(code, 2);
    let e = r.error.unwrap();
    assert_eq!(e.kind, "inapplicable");
    assert_eq!(e.message, "graph is not bi-regular");
}

#[test]
fn count_irregular_auto_falls_back_to_trace() {
    let (r, code) = report(&["count", "--input", &data("irregular.el")]);
    assert_eq!(code, 0);
    assert_eq!(
        r.routes
            .iter()
            .map(|x| x.route.as_str())
            .collect::<Vec<_>>(),
        ["transfer", "trace"]
    );
    assert_eq!(r.routes[0].status, RouteStatus::Skipped);
    assert_eq!(counts(&r), vec![(4, 3), (6, 0)]);
}

#[test]
fn verify_tesseract_agrees() {
    let (r, code) = report(&["verify", "--input", &data("q4.el")]);
    assert_eq!(code, 0);
    assert!(r.agreement);
    assert_eq!(r.routes.len(), 4);
    for run in &r.routes {
        assert_eq!(run.status, RouteStatus::Ok, "{}", run.route);
        assert_eq!(run.counts.get(&4), Some(&24), "{}", run.route);
    }
}

#[test]
fn verify_generated_graph_agrees() {
    let (r, code) = report(&["verify", "--generate", "2,3,30", "--seed", "5"]);
    assert_eq!(code, 0, "{r:?}");
    assert!(r.agreement);
    assert_eq!(r.input.generated.unwrap().seed, 5);
}

#[test]
fn verify_runs_the_g_plus_4_cross_check() {
    let dir = std::env::temp_dir().join(format!("girthspec-heawood-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("heawood.el");
    std::fs::write(
        &path,
        girthspec::io::write_edge_list(&girthspec::families::heawood()),
    )
    .unwrap();
    let (r, code) = report(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{r:?}");
    let x = r.cross_check.unwrap();
    assert_eq!(x.length, 10);
    assert!(x.agrees);
    assert_eq!(x.decomposition, x.spectral.map(|v| v.to_string()));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn corrupted_spectrum_is_a_disagreement() {
    let spectrum = data("q4_corrupted_spectrum.json");
    let (r, code) = report(&[
        "verify",
        "--input",
        &data("q4.el"),
        "--adjacency-spectrum",
        &spectrum,
    ]);
    assert_eq!(code, 1);
    assert!(!r.agreement);

    let (r, code) = report(&[
        "verify",
        "--input",
        &data("q4.el"),
        "--adjacency-spectrum",
        &spectrum,
        "--max-k",
        "4",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r.diffs.len(), 1);
    assert_eq!(r.diffs[0].k, 4);
    assert_eq!(r.diffs[0].values["transfer"], Some(25));
    assert_eq!(r.diffs[0].values["trace"], Some(24));
}

#[test]
fn residual_failure_exits_three() {
    let spectrum = data("q4_corrupted_spectrum.json");
    let (r, code) = report(&[
        "count",
        "--input",
        &data("q4.el"),
        "--route",
        "transfer",
        "--adjacency-spectrum",
        &spectrum,
    ]);
    assert_eq!(code, 3);
    assert_eq!(r.error.unwrap().kind, "numerical");
}

#[test]
fn malformed_input_exits_four() {
    let (r, code) = report(&[
        "count",
        "--input",
        &data("k34.alist"),
        "--format",
        "edgelist",
    ]);
    assert_eq!(code, 4);
    assert_eq!(r.error.unwrap().kind, "input");
    let (_, code) = girthspec(&["count", "--input", "/nonexistent/graph.el"], &[]);
    assert_eq!(code, 4);
}

#[test]
fn dense_cap_variable_applies_to_both_decompositions() {
    let q4 = data("q4.el");
    let (stdout, code) = girthspec(
        &["count", "--input", &q4, "--route", "direct"],
        &[("GIRTHSPEC_DENSE_CAP", "63")],
    );
    assert_eq!(code, 2, "{stdout}");
    let (_, code) = girthspec(
        &["count", "--input", &q4, "--route", "transfer"],
        &[("GIRTHSPEC_DENSE_CAP", "15")],
    );
    assert_eq!(code, 2);
    let (_, code) = girthspec(
        &["count", "--input", &q4, "--route", "direct"],
        &[("GIRTHSPEC_DENSE_CAP", "64")],
    );
    assert_eq!(code, 0);
    let (_, code) = girthspec(
        &["count", "--input", &q4],
        &[("GIRTHSPEC_DENSE_CAP", "lots")],
    );
    assert_eq!(code, 4);
}

#[test]
fn json_round_trips() {
    let (stdout, _) = girthspec(
        &["verify", "--input", &data("q4.el"), "--emit-spectra"],
        &[],
    );
    let parsed: RunReport = serde_json::from_str(&stdout).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(serde_json::from_str::<RunReport>(&again).unwrap(), parsed);
    assert_eq!(
        serde_json::from_str::<Value>(&again).unwrap(),
        serde_json::from_str::<Value>(&stdout).unwrap()
    );
    let spectra = parsed.spectra.unwrap();
    assert_eq!(
        spectra
            .adjacency
            .unwrap()
            .iter()
            .map(|e| e.mult)
            .sum::<usize>(),
        16
    );
    for route in ["transfer", "direct"] {
        let edge = &spectra.edge[route];
        assert_eq!(edge.iter().map(|e| e.mult).sum::<usize>(), 64);
    }
}

#[test]
fn output_is_deterministic_apart_from_timings() {
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        for r in v["routes"].as_array_mut().unwrap() {
            r["ms"] = Value::Null;
        }
        v
    };
    let args = [
        "verify",
        "--generate",
        "3,4,16",
        "--seed",
        "11",
        "--emit-spectra",
    ];
    let (a, _) = girthspec(&args, &[]);
    let (b, _) = girthspec(&args, &[]);
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn table_output() {
    let (stdout, code) = girthspec(&["verify", "--input", &data("q4.el"), "--table"], &[]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("graph: n=8 m=8 |E|=32"));
    assert!(stdout.contains("agreement: true"));
    assert_eq!(
        stdout
            .lines()
            .filter(|l| l.starts_with("transfer") || l.starts_with("brute"))
            .count(),
        2
    );
}

#[test]
fn bench_csv() {
    let (stdout, code) = girthspec(
        &[
            "bench",
            "--dv",
            "3",
            "--dc",
            "6",
            "--sizes",
            "12,24",
            "--repeats",
            "1",
        ],
        &[],
    );
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "n,m,edges,t_transfer_ms,t_direct_ms");
    assert!(lines[1].starts_with("12,6,36,"));
    assert!(lines[2].starts_with("24,12,72,"));
    assert!(!stdout.contains("n/a"));

    let (stdout, code) = girthspec(
        &[
            "bench",
            "--dv",
            "2",
            "--dc",
            "2",
            "--sizes",
            "8",
            "--repeats",
            "1",
        ],
        &[],
    );
    assert_eq!(code, 0);
    let row: Vec<&str> = stdout.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], "n/a");
    assert_ne!(row[4], "n/a");

    let (_, code) = girthspec(&["bench", "--dv", "3", "--dc", "6", "--sizes", "7"], &[]);
    assert_eq!(code, 4);
}

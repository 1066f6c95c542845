//! Edge-list and alist readers and writers.
//!
//! Edge list: a header line `n m`, then one `u w` pair per line with 0-based
//! indices; `#` starts a comment. alist: the usual LDPC interchange layout
//! with columns (variable nodes) as the left side and 1-based indices that
//! may be zero-padded.

use std::fmt::Write as _;
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Alist,
}

impl Format {
    /// Guesses the format from a file extension: `.alist` is alist,
    /// anything else an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("alist") => Format::Alist,
            _ => Format::EdgeList,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::EdgeList => "edgelist",
            Format::Alist => "alist",
        }
    }
}

/// A parsed graph plus non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: BipartiteGraph,
    pub warnings: Vec<String>,
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a nonnegative integer, found {tok:?}"),
    })
}

fn duplicate_warnings(dups: &[(usize, usize)], one_based: bool) -> Vec<String> {
    let off = usize::from(one_based);
    dups.iter()
        .map(|&(u, w)| {
            let msg = format!("duplicate edge ({}, {}) collapsed", u + off, w + off);
            warn!("{msg}");
            msg
        })
        .collect()
}

pub fn parse_edge_list(text: &str) -> Result<Parsed> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two integers, found {} tokens", toks.len()),
            });
        }
        let a = parse_usize(toks[0], line_no)?;
        let b = parse_usize(toks[1], line_no)?;
        match header {
            None => {
                if a == 0 || b == 0 {
                    return Err(Error::ZeroNodes);
                }
                header = Some((a, b));
            }
            Some((n, m)) => {
                if a >= n {
                    return Err(Error::IndexOutOfRange {
                        line: line_no,
                        index: a,
                        bound: n,
                    });
                }
                if b >= m {
                    return Err(Error::IndexOutOfRange {
                        line: line_no,
                        index: b,
                        bound: m,
                    });
                }
                edges.push((a, b));
            }
        }
    }

    let (n, m) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let (graph, dups) = BipartiteGraph::with_duplicates(n, m, edges)?;
    Ok(Parsed {
        graph,
        warnings: duplicate_warnings(&dups, false),
    })
}

pub fn write_edge_list(g: &BipartiteGraph) -> String {
    let mut out = format!("{} {}\n", g.left_count(), g.right_count());
    for &(u, w) in g.edges() {
        writeln!(out, "{u} {w}").unwrap();
    }
    out
}

pub fn parse_alist(text: &str) -> Result<Parsed> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut next_ints = |what: &str| -> Result<(usize, Vec<usize>)> {
        let (line_no, l) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("unexpected end of file while reading {what}"),
        })?;
        let vals = l
            .split_whitespace()
            .map(|t| parse_usize(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        Ok((line_no, vals))
    };

    let (line_no, dims) = next_ints("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(Error::Parse {
            line: line_no,
            message: "expected \"n m\"".into(),
        });
    };
    if n == 0 || m == 0 {
        return Err(Error::ZeroNodes);
    }
    let (line_no, maxes) = next_ints("maximum degrees")?;
    let [max_col, max_row] = maxes[..] else {
        return Err(Error::Parse {
            line: line_no,
            message: "expected \"max_col_deg max_row_deg\"".into(),
        });
    };
    let (line_no, col_deg) = next_ints("column degrees")?;
    if col_deg.len() != n {
        return Err(Error::InconsistentAlist(format!(
            "line {line_no}: {} column degrees listed, expected {n}",
            col_deg.len()
        )));
    }
    let (line_no, row_deg) = next_ints("row degrees")?;
    if row_deg.len() != m {
        return Err(Error::InconsistentAlist(format!(
            "line {line_no}: {} row degrees listed, expected {m}",
            row_deg.len()
        )));
    }
    if col_deg.iter().any(|&d| d > max_col) || row_deg.iter().any(|&d| d > max_row) {
        return Err(Error::InconsistentAlist(
            "a listed degree exceeds the declared maximum".into(),
        ));
    }

    // Column section: neighbors of each column are row indices.
    let mut from_cols = Vec::new();
    for (u, &deg) in col_deg.iter().enumerate() {
        let (line_no, vals) = next_ints("column neighbor list")?;
        let rows = nonzero_entries(&vals, deg, m, line_no, "column", u)?;
        from_cols.extend(rows.into_iter().map(|w| (u, w)));
    }
    let mut from_rows = Vec::new();
    for (w, &deg) in row_deg.iter().enumerate() {
        let (line_no, vals) = next_ints("row neighbor list")?;
        let cols = nonzero_entries(&vals, deg, n, line_no, "row", w)?;
        from_rows.extend(cols.into_iter().map(|u| (u, w)));
    }

    let mut a = from_cols.clone();
    let mut b = from_rows;
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Err(Error::InconsistentAlist(
            "column and row neighbor lists describe different edge sets".into(),
        ));
    }

    let (graph, dups) = BipartiteGraph::with_duplicates(n, m, from_cols)?;
    Ok(Parsed {
        graph,
        warnings: duplicate_warnings(&dups, true),
    })
}

/// Strips zero padding from a 1-based neighbor row and shifts it to 0-based.
fn nonzero_entries(
    vals: &[usize],
    deg: usize,
    bound: usize,
    line: usize,
    side: &str,
    which: usize,
) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(deg);
    for &v in vals {
        if v == 0 {
            continue;
        }
        if v > bound {
            return Err(Error::IndexOutOfRange {
                line,
                index: v,
                bound,
            });
        }
        out.push(v - 1);
    }
    if out.len() != deg {
        return Err(Error::InconsistentAlist(format!(
            "line {line}: {side} {} lists {} neighbors but its degree is {deg}",
            which + 1,
            out.len()
        )));
    }
    Ok(out)
}

pub fn write_alist(g: &BipartiteGraph) -> String {
    let n = g.left_count();
    let m = g.right_count();
    let col_deg: Vec<usize> = (0..n).map(|u| g.left_degree(u)).collect();
    let row_deg: Vec<usize> = (0..m).map(|w| g.right_degree(w)).collect();
    // An isolated node is written as a single zero pad so that its line
    // is not mistaken for a blank one.
    let join = |xs: &mut dyn Iterator<Item = usize>| {
        let s = xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        if s.is_empty() {
            "0".to_string()
        } else {
            s
        }
    };

    let mut out = format!("{n} {m}\n");
    writeln!(
        out,
        "{} {}",
        col_deg.iter().max().copied().unwrap_or(0),
        row_deg.iter().max().copied().unwrap_or(0)
    )
    .unwrap();
    writeln!(out, "{}", join(&mut col_deg.iter().copied())).unwrap();
    writeln!(out, "{}", join(&mut row_deg.iter().copied())).unwrap();
    for u in 0..n {
        writeln!(
            out,
            "{}",
            join(&mut g.left_neighbors(u).iter().map(|w| w + 1))
        )
        .unwrap();
    }
    for w in 0..m {
        writeln!(
            out,
            "{}",
            join(&mut g.right_neighbors(w).iter().map(|u| u + 1))
        )
        .unwrap();
    }
    out
}

pub fn parse(text: &str, format: Format) -> Result<Parsed> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Alist => parse_alist(text),
    }
}

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Parsed> {
    let text = std::fs::read_to_string(path)?;
    parse(&text, format.unwrap_or_else(|| Format::from_path(path)))
}

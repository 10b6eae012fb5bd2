//! Text formats for matrices, graphs and certificates.
//!
//! Matrix file: a header line `n` followed by `n` rows of `n` values, or a
//! header `lower n` followed by rows `i = 1..n` holding `i` values each
//! (the diagonal last). Values are integers, fractions `p/q` or decimals,
//! all read exactly. Diagonal entries are read and discarded. Elements are
//! labelled `0..n` in file order.
//!
//! Graph file: a header `n m` then `m` lines `u v` with 0-based vertices.
//!
//! In all formats blank lines and text after `#` are ignored.

use serde::{Deserialize, Serialize};

use crate::avoidance::Path;
use crate::certificates::{Certificate, WeightedAsteroidalTriple};
use crate::matrix::{LinearOrder, SymMatrix};
use crate::uig::Graph;
use crate::values::{parse_rational, EntryValue};
use crate::{Error, Label, Result};

/// Meaningful lines as `(1-based line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = l.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_count(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} must be a non-negative integer, got {tok:?}")))
}

pub fn parse_matrix(text: &str) -> Result<SymMatrix> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (lower, n) = match header.as_slice() {
        [n] => (false, parse_count(hl, n, "size")?),
        ["lower", n] => (true, parse_count(hl, n, "size")?),
        _ => return Err(parse_err(hl, "header must be `n` or `lower n`")),
    };
    if n == 0 {
        return Err(parse_err(hl, "matrix must have at least one element"));
    }
    let mut grid: Vec<Vec<EntryValue>> = Vec::with_capacity(n);
    for i in 0..n {
        let (ln, toks) = it
            .next()
            .ok_or_else(|| parse_err(hl, format!("expected {n} rows, found {i}")))?;
        let want = if lower { i + 1 } else { n };
        if toks.len() != want {
            return Err(parse_err(ln, format!("row {i} has {} values, expected {want}", toks.len())));
        }
        let row = toks
            .iter()
            .map(|t| parse_rational(t).map(EntryValue::from_rational))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| parse_err(ln, e.to_string()))?;
        grid.push(row);
    }
    if !lower {
        for i in 0..n {
            for j in 0..i {
                if grid[i][j] != grid[j][i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
    }
    if let Some((ln, _)) = it.next() {
        return Err(parse_err(ln, "unexpected content after the last row"));
    }
    // `from_fn` asks for `i < j`; the lower triangle is filled in both forms.
    SymMatrix::from_fn((0..n).collect(), |i, j| grid[j][i].clone())
}

/// Writes `a` in the full square format, zero on the diagonal. Only
/// matrices of original entries can be written.
pub fn write_matrix(a: &SymMatrix) -> Result<String> {
    let n = a.n();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            if i == j {
                row.push("0".to_string());
            } else {
                let v = a.entry(i, j);
                if !v.is_original() {
                    return Err(Error::Value(format!("cannot write the transformed entry {v}")));
                }
                row.push(v.to_string());
            }
        }
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (n, m) = match header.as_slice() {
        [n, m] => (parse_count(hl, n, "vertex count")?, parse_count(hl, m, "edge count")?),
        _ => return Err(parse_err(hl, "header must be `n m`")),
    };
    let mut g = Graph::new(n);
    for k in 0..m {
        let (ln, toks) = it
            .next()
            .ok_or_else(|| parse_err(hl, format!("expected {m} edges, found {k}")))?;
        match toks.as_slice() {
            [u, v] => {
                let (u, v) = (parse_count(ln, u, "vertex")?, parse_count(ln, v, "vertex")?);
                g.add_edge(u, v).map_err(|e| parse_err(ln, e.to_string()))?;
            }
            _ => return Err(parse_err(ln, "edge line must be `u v`")),
        }
    }
    if let Some((ln, _)) = it.next() {
        return Err(parse_err(ln, "unexpected content after the last edge"));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn join(labels: &[Label]) -> String {
    labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// Line-oriented certificate:
///
/// ```text
/// robinsonian
/// ordering: 2 0 1
/// ```
///
/// or
///
/// ```text
/// not robinsonian
/// weighted asteroidal triple: 1 2 3
/// path 1-2 avoiding 3: 1 0 2
/// path 1-3 avoiding 2: 1 0 3
/// path 2-3 avoiding 1: 2 0 3
/// ```
pub fn write_certificate(c: &Certificate) -> String {
    match c {
        Certificate::RobinsonOrdering { ordering } => {
            format!("robinsonian\nordering: {}\n", join(ordering.as_slice()))
        }
        Certificate::NotRobinsonian { wat } => {
            let mut out = format!(
                "not robinsonian\nweighted asteroidal triple: {} {} {}\n",
                wat.x, wat.y, wat.z
            );
            for (_, p) in wat.paths() {
                out.push_str(&format!(
                    "path {}-{} avoiding {}: {}\n",
                    p.start().unwrap_or_default(),
                    p.end().unwrap_or_default(),
                    p.avoided,
                    join(&p.nodes)
                ));
            }
            out
        }
    }
}

/// The JSON document emitted after a certificate passed re-verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedCertificate {
    pub verified: bool,
    pub certificate: Certificate,
}

/// Reads a certificate in the text form of [`write_certificate`], as a bare
/// JSON certificate, or as a [`VerifiedCertificate`] document.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| parse_err(e.line(), e.to_string()))?;
        let inner = doc.get("certificate").cloned().unwrap_or(doc);
        return serde_json::from_value(inner).map_err(|e| parse_err(1, e.to_string()));
    }
    let body: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim().to_string()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let labels = |line: usize, s: &str| -> Result<Vec<Label>> {
        s.split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(line, format!("bad label {t:?}"))))
            .collect()
    };
    let field = |idx: usize, key: &str| -> Result<(usize, String)> {
        let (ln, l) = body
            .get(idx)
            .ok_or_else(|| parse_err(body.last().map_or(1, |b| b.0), format!("missing `{key}` line")))?;
        let (k, v) = l
            .split_once(':')
            .ok_or_else(|| parse_err(*ln, format!("expected `{key}: ...`")))?;
        if !k.trim().starts_with(key) {
            return Err(parse_err(*ln, format!("expected `{key}: ...`")));
        }
        Ok((*ln, v.to_string()))
    };
    match body.first().map(|(_, l)| l.as_str()) {
        Some("robinsonian") => {
            let (ln, v) = field(1, "ordering")?;
            if body.len() > 2 {
                return Err(parse_err(body[2].0, "unexpected trailing content"));
            }
            Ok(LinearOrder::new(labels(ln, &v)?).into())
        }
        Some("not robinsonian") => {
            let (ln, v) = field(1, "weighted asteroidal triple")?;
            let t = labels(ln, &v)?;
            let [x, y, z] = t[..] else {
                return Err(parse_err(ln, "a triple needs three labels"));
            };
            let mut paths = Vec::new();
            for (idx, (from, to, avoided)) in [(x, y, z), (x, z, y), (y, z, x)].into_iter().enumerate() {
                let (ln, v) = field(2 + idx, "path")?;
                let head = body[2 + idx].1.split_once(':').map(|h| h.0.trim().to_string());
                let want = format!("path {from}-{to} avoiding {avoided}");
                if head.as_deref() != Some(want.as_str()) {
                    return Err(parse_err(ln, format!("expected `{want}: ...`")));
                }
                paths.push(Path { nodes: labels(ln, &v)?, avoided });
            }
            if body.len() > 5 {
                return Err(parse_err(body[5].0, "unexpected trailing content"));
            }
            let mut it = paths.into_iter();
            let (p_xy, p_xz, p_yz) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
            Ok(WeightedAsteroidalTriple { x, y, z, p_xy, p_xz, p_yz }.into())
        }
        Some(other) => Err(parse_err(body[0].0, format!("unknown certificate kind {other:?}"))),
        None => Err(parse_err(1, "empty certificate")),
    }
}

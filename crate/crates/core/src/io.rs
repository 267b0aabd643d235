//! Line-oriented file formats. Vertices and bags are 1-indexed on disk and
//! 0-indexed in memory; this module is the only place that converts.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::decomp::{TreeCutDecomposition, TreeDecomposition, TreePartition};
use crate::graph::{EdgeCounts, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
}

fn err<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        reason: reason.into(),
    })
}

/// Non-comment, non-blank lines with their 1-based numbers, plus the number
/// of the line just past the end (where "missing line" errors point).
fn content_lines(text: &str) -> (Vec<(usize, Vec<&str>)>, usize) {
    let mut out = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        last = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        out.push((i + 1, line.split_whitespace().collect()));
    }
    (out, last + 1)
}

fn num(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .or_else(|_| err(line, format!("{what} `{tok}` is not a nonnegative integer")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize, ParseError> {
    let v = num(line, tok, "vertex")?;
    if v == 0 || v > n {
        return err(line, format!("vertex {v} outside 1..={n}"));
    }
    Ok(v - 1)
}

pub fn parse_gr(text: &str) -> Result<Graph, ParseError> {
    let (lines, eof) = content_lines(text);
    let Some((hl, header)) = lines.first() else {
        return err(eof, "missing `p tp <n> <m>` header");
    };
    if header.len() != 4 || header[0] != "p" || !(header[1] == "tp" || header[1] == "tw") {
        return err(*hl, "expected `p tp <n> <m>`");
    }
    let n = num(*hl, header[2], "vertex count")?;
    let m = num(*hl, header[3], "edge count")?;
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for (ln, toks) in &lines[1..] {
        if edges.len() == m {
            return err(*ln, format!("more than the declared {m} edges"));
        }
        if toks.len() != 2 {
            return err(*ln, "expected `<u> <v>`");
        }
        let (u, v) = (vertex(*ln, toks[0], n)?, vertex(*ln, toks[1], n)?);
        if u == v {
            return err(*ln, format!("self-loop at {}", u + 1));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return err(*ln, format!("duplicate edge {} {}", u + 1, v + 1));
        }
        edges.push((u, v));
    }
    if edges.len() < m {
        return err(eof, format!("declared {m} edges, found {}", edges.len()));
    }
    Ok(Graph::from_edges(n, edges).expect("edges validated above"))
}

pub fn emit_gr(g: &Graph) -> String {
    let mut s = format!("p tp {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    s
}

/// Bags and tree edges of any of the decomposition formats.
struct Body {
    header_line: usize,
    header: Vec<String>,
    root: Option<usize>,
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// Shared reader for `s <kind> <#bags> <size> <n>` files. Returns the body and n.
fn parse_body(text: &str, kind: &str, rooted: bool) -> Result<(Body, usize), ParseError> {
    let (lines, eof) = content_lines(text);
    let Some((hl, header)) = lines.first() else {
        return err(eof, format!("missing `s {kind} ...` header"));
    };
    if header.len() != 5 || header[0] != "s" || header[1] != kind {
        return err(*hl, format!("expected `s {kind} <#bags> <size> <n>`"));
    }
    let nb = num(*hl, header[2], "bag count")?;
    let n = num(*hl, header[4], "vertex count")?;
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nb];
    let mut edges = Vec::new();
    let mut root = None;
    for (ln, toks) in &lines[1..] {
        match toks[0] {
            "r" if rooted => {
                if root.is_some() || toks.len() != 2 {
                    return err(*ln, "expected a single `r <root>` line");
                }
                let r = num(*ln, toks[1], "root")?;
                if r == 0 || r > nb {
                    return err(*ln, format!("root {r} outside 1..={nb}"));
                }
                root = Some(r - 1);
            }
            "b" => {
                if toks.len() < 2 {
                    return err(*ln, "expected `b <id> <v...>`");
                }
                let id = num(*ln, toks[1], "bag id")?;
                if id == 0 || id > nb {
                    return err(*ln, format!("bag id {id} outside 1..={nb}"));
                }
                if bags[id - 1].is_some() {
                    return err(*ln, format!("bag {id} listed twice"));
                }
                let mut bag = Vec::with_capacity(toks.len() - 2);
                for t in &toks[2..] {
                    bag.push(vertex(*ln, t, n)?);
                }
                let mut sorted = bag.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return err(*ln, format!("bag {id} repeats a vertex"));
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                if toks.len() != 2 {
                    return err(*ln, "expected a bag line or `<i> <j>`");
                }
                let (a, b) = (num(*ln, toks[0], "bag id")?, num(*ln, toks[1], "bag id")?);
                for x in [a, b] {
                    if x == 0 || x > nb {
                        return err(*ln, format!("bag id {x} outside 1..={nb}"));
                    }
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    if let Some(missing) = bags.iter().position(Option::is_none) {
        return err(eof, format!("bag {} is never listed", missing + 1));
    }
    if rooted && root.is_none() && nb > 0 {
        return err(eof, "missing `r <root>` line");
    }
    let body = Body {
        header_line: *hl,
        header: header.iter().map(|s| s.to_string()).collect(),
        root,
        bags: bags.into_iter().map(|b| b.expect("checked above")).collect(),
        edges,
    };
    Ok((body, n))
}

fn check_size(body: &Body, actual: usize, what: &str) -> Result<(), ParseError> {
    let declared = num(body.header_line, &body.header[3], what)?;
    if declared != actual {
        return err(body.header_line, format!("declared {what} {declared}, actual {actual}"));
    }
    Ok(())
}

/// Returns the decomposition and the declared vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize), ParseError> {
    let (body, n) = parse_body(text, "td", false)?;
    let max = body.bags.iter().map(Vec::len).max().unwrap_or(0);
    check_size(&body, max, "max bag size")?;
    Ok((TreeDecomposition::new(body.bags, body.edges), n))
}

pub fn parse_tp(text: &str) -> Result<(TreePartition, usize), ParseError> {
    let (body, n) = parse_body(text, "tp", false)?;
    let max = body.bags.iter().map(Vec::len).max().unwrap_or(0);
    check_size(&body, max, "width")?;
    Ok((TreePartition::new(body.bags, body.edges), n))
}

/// Returns the decomposition, the declared width (checked only against a
/// graph, by the caller) and the declared vertex count.
pub fn parse_tcd(text: &str) -> Result<(TreeCutDecomposition, usize, usize), ParseError> {
    let (body, n) = parse_body(text, "tcd", true)?;
    let width = num(body.header_line, &body.header[3], "width")?;
    let tcd = TreeCutDecomposition {
        bags: body.bags,
        edges: body.edges,
        root: body.root.unwrap_or(0),
    };
    Ok((tcd, width, n))
}

fn emit_body(out: &mut String, bags: &[Vec<usize>], edges: &[(usize, usize)]) {
    for (i, bag) in bags.iter().enumerate() {
        let mut b = bag.clone();
        b.sort_unstable();
        let _ = write!(out, "b {}", i + 1);
        for v in b {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    let mut e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    e.sort_unstable();
    for (a, b) in e {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
}

pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let max = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut s = format!("s td {} {} {}\n", td.num_nodes(), max, n);
    emit_body(&mut s, &td.bags, &td.edges);
    s
}

pub fn emit_tp(tp: &TreePartition, n: usize) -> String {
    let mut s = format!("s tp {} {} {}\n", tp.num_nodes(), tp.width(), n);
    emit_body(&mut s, &tp.bags, &tp.edges);
    s
}

pub fn emit_tcd(tcd: &TreeCutDecomposition, width: usize, n: usize) -> String {
    let mut s = format!("s tcd {} {} {}\nr {}\n", tcd.bags.len(), width, n, tcd.root + 1);
    emit_body(&mut s, &tcd.bags, &tcd.edges);
    s
}

/// Subdivision counts: lines `<u> <v> <count>`, 1-indexed, checked against `g`.
pub fn parse_counts(text: &str, g: &Graph) -> Result<EdgeCounts, ParseError> {
    let (lines, _) = content_lines(text);
    let mut counts = EdgeCounts::new();
    for (ln, toks) in &lines {
        if toks.len() != 3 {
            return err(*ln, "expected `<u> <v> <count>`");
        }
        let (u, v) = (vertex(*ln, toks[0], g.n())?, vertex(*ln, toks[1], g.n())?);
        let c = num(*ln, toks[2], "count")?;
        if !g.has_edge(u, v) {
            return err(*ln, format!("{} {} is not an edge", u + 1, v + 1));
        }
        if counts.insert((u.min(v), u.max(v)), c).is_some() {
            return err(*ln, format!("duplicate edge {} {}", u + 1, v + 1));
        }
    }
    Ok(counts)
}

pub fn emit_counts(counts: &EdgeCounts) -> String {
    let mut s = String::new();
    for (&(u, v), c) in counts {
        let _ = writeln!(s, "{} {} {c}", u + 1, v + 1);
    }
    s
}

/// One JSON object per line.
pub fn emit_jsonl<T: Serialize>(records: &[T]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("records serialize"));
        s.push('\n');
    }
    s
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn with_path<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, IoError> {
    r.map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_gr(path: &Path) -> Result<Graph, IoError> {
    with_path(path, parse_gr(&read(path)?))
}

pub fn read_td(path: &Path) -> Result<(TreeDecomposition, usize), IoError> {
    with_path(path, parse_td(&read(path)?))
}

pub fn read_tp(path: &Path) -> Result<(TreePartition, usize), IoError> {
    with_path(path, parse_tp(&read(path)?))
}

pub fn read_tcd(path: &Path) -> Result<(TreeCutDecomposition, usize, usize), IoError> {
    with_path(path, parse_tcd(&read(path)?))
}

pub fn read_counts(path: &Path, g: &Graph) -> Result<EdgeCounts, IoError> {
    with_path(path, parse_counts(&read(path)?, g))
}

pub fn write(path: &Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr_examples() {
        let k2 = parse_gr("p tp 2 1\n1 2\n").unwrap();
        assert_eq!((k2.n(), k2.m()), (2, 1));
        assert_eq!(parse_gr("p tp 0 0\n").unwrap().n(), 0);
        let e = parse_gr("p tp 3 2\n1 2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_gr("p tw 3 1\nc note\n1 3\n").is_ok());
    }

    #[test]
    fn gr_rejects_bad_edges() {
        assert_eq!(parse_gr("p tp 3 2\n1 2\n2 1\n").unwrap_err().line, 3);
        assert_eq!(parse_gr("p tp 3 1\n1 4\n").unwrap_err().line, 2);
        assert_eq!(parse_gr("p tp 3 1\n2 2\n").unwrap_err().line, 2);
        assert_eq!(parse_gr("p tp 3 1\n1 2\n2 3\n").unwrap_err().line, 3);
        assert_eq!(parse_gr("c only\n").unwrap_err().line, 2);
    }

    #[test]
    fn canonical_round_trips() {
        let gr = "p tp 4 3\n1 2\n1 4\n2 3\n";
        assert_eq!(emit_gr(&parse_gr(gr).unwrap()), gr);
        let td = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let (t, n) = parse_td(td).unwrap();
        assert_eq!(emit_td(&t, n), td);
        let tp = "s tp 2 2 4\nb 1 1 3\nb 2 2 4\n1 2\n";
        let (t, n) = parse_tp(tp).unwrap();
        assert_eq!(emit_tp(&t, n), tp);
        let tcd = "s tcd 3 2 3\nr 1\nb 1\nb 2 1 2\nb 3 3\n1 2\n1 3\n";
        let (t, w, n) = parse_tcd(tcd).unwrap();
        assert_eq!(t.bags[0], Vec::<usize>::new());
        assert_eq!(emit_tcd(&t, w, n), tcd);
    }

    #[test]
    fn decomposition_validation() {
        assert_eq!(parse_td("s td 1 3 3\nb 1 1 2\n").unwrap_err().line, 1);
        assert_eq!(parse_td("s td 2 2 3\nb 1 1 2\n").unwrap_err().line, 3);
        assert_eq!(parse_tp("s tp 1 2 3\nb 1 1 1\n").unwrap_err().line, 2);
        assert_eq!(parse_tp("s tp 1 1 3\nb 1 1\n1 2\n").unwrap_err().line, 3);
        assert!(parse_tcd("s tcd 1 0 1\nb 1 1\n").is_err());
    }

    #[test]
    fn jsonl_lines() {
        #[derive(Serialize)]
        struct R {
            a: usize,
        }
        assert_eq!(emit_jsonl(&[R { a: 1 }, R { a: 2 }]), "{\"a\":1}\n{\"a\":2}\n");
    }
}

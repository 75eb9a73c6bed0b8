//! Graph files: DIMACS `.col` (`p edge n m`, `e u v`) and a plain edge list
//! (vertex count on the first line, then one 1-based `u v` pair per line).
//! `#` and `c` lines are comments in both.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{GraphError, UndirectedGraph};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(tok: Option<&str>, line: usize) -> Result<usize, IoError> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing number"))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad number {tok:?}")))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.trim();
        let comment = l.is_empty() || l.starts_with('#') || l == "c" || l.starts_with("c ");
        (!comment).then_some((k + 1, l))
    })
}

fn edge(g: &mut UndirectedGraph, u: usize, v: usize, line: usize) -> Result<(), IoError> {
    if u == 0 || v == 0 {
        return Err(parse_err(line, "vertices are numbered from 1"));
    }
    g.add_edge(u - 1, v - 1)?;
    Ok(())
}

pub fn parse_dimacs(text: &str) -> Result<UndirectedGraph, IoError> {
    let mut g: Option<UndirectedGraph> = None;
    for (line, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("p") => {
                if g.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                toks.next();
                g = Some(UndirectedGraph::edgeless(number(toks.next(), line)?));
            }
            Some("e") => {
                let g = g
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let u = number(toks.next(), line)?;
                let v = number(toks.next(), line)?;
                edge(g, u, v, line)?;
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type {other:?}"))),
            None => {}
        }
    }
    g.ok_or_else(|| parse_err(0, "no problem line"))
}

pub fn parse_edge_list(text: &str) -> Result<UndirectedGraph, IoError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut g = UndirectedGraph::edgeless(number(header.split_whitespace().next(), line)?);
    for (line, l) in lines {
        let mut toks = l.split_whitespace();
        let u = number(toks.next(), line)?;
        let v = number(toks.next(), line)?;
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
        edge(&mut g, u, v, line)?;
    }
    Ok(g)
}

/// DIMACS when any line starts with `p `, edge list otherwise.
pub fn parse_graph(text: &str) -> Result<UndirectedGraph, IoError> {
    if text.lines().any(|l| l.trim_start().starts_with("p ")) {
        parse_dimacs(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn read_graph(path: &Path) -> Result<UndirectedGraph, IoError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn to_dimacs(g: &UndirectedGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// The canonical text the instance hash is computed over.
pub fn to_edge_list(g: &UndirectedGraph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

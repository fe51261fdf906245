//! Text formats for graphs and edit scripts.
//!
//! Graph file: `n m` on the first line, then `m` lines `u v` with `u < v`.
//! Script file: `n` on the first line, then one op per line
//! (`AE u v`, `DE u v`, `AV v`, `DV v`).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{DynamicGraph, EditOp, EditScript, VertexId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph labels are not dense (0..n); cannot write graph file")]
    NonDense,
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, FormatError> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

pub fn write_graph(g: &DynamicGraph) -> Result<String, FormatError> {
    if !g.is_dense() {
        return Err(FormatError::NonDense);
    }
    let mut out = String::new();
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<DynamicGraph, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    let n: usize = parse_num(toks.next(), ln, "vertex count")?;
    let m: usize = parse_num(toks.next(), ln, "edge count")?;
    let mut g = DynamicGraph::edgeless(n);
    let mut seen = 0;
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let u: u32 = parse_num(toks.next(), ln, "endpoint")?;
        let v: u32 = parse_num(toks.next(), ln, "endpoint")?;
        if u >= v {
            return Err(parse_err(ln, "edge must be written with u < v"));
        }
        g.add_edge(VertexId(u), VertexId(v))
            .map_err(|e| parse_err(ln, e.to_string()))?;
        seen += 1;
    }
    if seen != m {
        return Err(parse_err(1, format!("header declares {m} edges, found {seen}")));
    }
    Ok(g)
}

pub fn write_script(s: &EditScript) -> String {
    let mut out = String::new();
    writeln!(out, "{}", s.initial_n).unwrap();
    for op in &s.ops {
        writeln!(out, "{op}").unwrap();
    }
    out
}

pub fn parse_op(line: &str, ln: usize) -> Result<EditOp, FormatError> {
    let mut toks = line.split_whitespace();
    let kind = toks.next().ok_or_else(|| parse_err(ln, "empty op"))?;
    let op = match kind {
        "AE" | "DE" => {
            let u = VertexId(parse_num(toks.next(), ln, "endpoint")?);
            let v = VertexId(parse_num(toks.next(), ln, "endpoint")?);
            if kind == "AE" {
                EditOp::AddEdge(u, v)
            } else {
                EditOp::DelEdge(u, v)
            }
        }
        "AV" => EditOp::AddVertex(VertexId(parse_num(toks.next(), ln, "vertex")?)),
        "DV" => EditOp::DelVertex(VertexId(parse_num(toks.next(), ln, "vertex")?)),
        other => return Err(parse_err(ln, format!("unknown op kind {other:?}"))),
    };
    if toks.next().is_some() {
        return Err(parse_err(ln, "trailing tokens"));
    }
    Ok(op)
}

/// Parses a script without replaying it; validity is checked when it runs.
pub fn parse_script(text: &str) -> Result<EditScript, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let initial_n = parse_num(header.split_whitespace().next(), ln, "vertex count")?;
    let mut ops = Vec::new();
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        ops.push(parse_op(line, ln)?);
    }
    Ok(EditScript { initial_n, ops })
}

//! Graph file formats.
//!
//! Text: a `n <count>` header, then one `<tail> <head> <weight>` edge per
//! line; `#` starts a comment. An optional `provenance dcid <m>` or
//! `provenance compose <split>` line records how the graph was built.
//!
//! JSON: `{"n": 3, "edges": [[2, 1, 1.0], ...], "provenance": {...}}`.
//! Input starting with `{` is read as JSON.
//!
//! Weights are written in the shortest form that parses back to the same
//! `f64`, so files round-trip exactly.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, Edge, Provenance};

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.to_string())
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

fn parse_edge(tokens: &[&str], line: usize) -> Result<Edge> {
    match tokens {
        [t, h, w] => Ok(Edge::new(
            parse_num(t, line, "tail")?,
            parse_num(h, line, "head")?,
            parse_num(w, line, "weight")?,
        )),
        _ => Err(Error::parse(
            line,
            format!("expected `tail head weight`, got `{}`", tokens.join(" ")),
        )),
    }
}

fn parse_text(src: &str) -> Result<Digraph> {
    let mut n = None;
    let mut provenance = None;
    let mut edges = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "n" => {
                if n.is_some() {
                    return Err(Error::parse(line, "repeated `n` header"));
                }
                match tokens[1..] {
                    [count] => n = Some(parse_num::<usize>(count, line, "node count")?),
                    _ => return Err(Error::parse(line, "expected `n <count>`")),
                }
            }
            "provenance" => {
                provenance = Some(match tokens[1..] {
                    ["dcid", m] => Provenance::Dcid {
                        m: parse_num(m, line, "layer count")?,
                    },
                    ["compose", split] => Provenance::Compose {
                        split: parse_num(split, line, "split")?,
                    },
                    _ => {
                        return Err(Error::parse(
                            line,
                            "expected `provenance dcid <m>` or `provenance compose <split>`",
                        ))
                    }
                });
            }
            _ => {
                if n.is_none() {
                    return Err(Error::parse(line, "edge before the `n <count>` header"));
                }
                edges.push(parse_edge(&tokens, line)?);
            }
        }
    }
    let n =
        n.ok_or_else(|| Error::parse(src.lines().count().max(1), "missing `n <count>` header"))?;
    Ok(Digraph::new(n, &edges)?.with_provenance(provenance))
}

/// Reads a graph in text or JSON form.
pub fn parse_graph(src: &str) -> Result<Digraph> {
    if src.trim_start().starts_with('{') {
        let raw: GraphJson = serde_json::from_str(src).map_err(json_error)?;
        Ok(Digraph::new(raw.n, &raw.edges)?.with_provenance(raw.provenance))
    } else {
        parse_text(src)
    }
}

pub fn to_text(g: &Digraph) -> String {
    let mut out = format!("n {}\n", g.n());
    match g.provenance() {
        Some(Provenance::Dcid { m }) => out.push_str(&format!("provenance dcid {m}\n")),
        Some(Provenance::Compose { split }) => {
            out.push_str(&format!("provenance compose {split}\n"))
        }
        None => {}
    }
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {:?}", e.tail, e.head, e.weight);
    }
    out
}

pub fn to_json(g: &Digraph) -> String {
    let raw = GraphJson {
        n: g.n(),
        edges: g.edges().map(|e| (e.tail, e.head, e.weight)).collect(),
        provenance: g.provenance(),
    };
    serde_json::to_string(&raw).expect("graph serializes")
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CrossJson {
    #[serde(default)]
    e12: Vec<(usize, usize, f64)>,
    #[serde(default)]
    e21: Vec<(usize, usize, f64)>,
}

/// Cross edges for a composition. Text form has `[e12]` and `[e21]` section
/// headers followed by `tail head weight` lines; JSON form is
/// `{"e12": [[t, h, w], ...], "e21": [...]}`. Labels are local to each graph.
pub fn parse_cross_edges(src: &str) -> Result<(Vec<Edge>, Vec<Edge>)> {
    if src.trim_start().starts_with('{') {
        let raw: CrossJson = serde_json::from_str(src).map_err(json_error)?;
        let conv = |v: Vec<(usize, usize, f64)>| v.into_iter().map(Edge::from).collect();
        return Ok((conv(raw.e12), conv(raw.e21)));
    }
    let (mut e12, mut e21) = (Vec::new(), Vec::new());
    let mut section: Option<bool> = None;
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        match content {
            "" => continue,
            "[e12]" => section = Some(true),
            "[e21]" => section = Some(false),
            _ => {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                let edge = parse_edge(&tokens, line)?;
                match section {
                    Some(true) => e12.push(edge),
                    Some(false) => e21.push(edge),
                    None => {
                        return Err(Error::parse(
                            line,
                            "edge before a `[e12]` or `[e21]` header",
                        ))
                    }
                }
            }
        }
    }
    Ok((e12, e21))
}

/// Numbers separated by whitespace or commas; `#` starts a comment.
pub fn parse_vector(src: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        for tok in strip_comment(raw).split(|c: char| c == ',' || c.is_whitespace()) {
            if !tok.is_empty() {
                out.push(parse_num(tok, idx + 1, "number")?);
            }
        }
    }
    Ok(out)
}

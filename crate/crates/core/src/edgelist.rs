//! Plain-text edge lists.
//!
//! ```text
//! # comment lines start with '#'
//! V E
//! src dst [weight]
//! ...
//! ```
//!
//! Weights are optional but must be present on either every arc or none.
//! They are read as exact decimals; `1e-3` and `0.001` denote the same value.

use std::fmt::Write as _;
use std::str::FromStr;

use bigdecimal::BigDecimal;

use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexId, WeightedDigraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeList {
    Plain(Digraph),
    Weighted(WeightedDigraph),
}

impl EdgeList {
    pub fn digraph(&self) -> &Digraph {
        match self {
            EdgeList::Plain(g) => g,
            EdgeList::Weighted(wg) => wg.digraph(),
        }
    }

    pub fn weighted(&self) -> Option<&WeightedDigraph> {
        match self {
            EdgeList::Plain(_) => None,
            EdgeList::Weighted(wg) => Some(wg),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_count(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer {what}, found `{tok}`")))
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing `V E` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(header_line, "header must be `V E`"));
    }
    let vertex_count = parse_count(toks[0], header_line, "vertex count")?;
    let edge_count = parse_count(toks[1], header_line, "edge count")?;

    let mut arcs: Vec<(VertexId, VertexId)> = Vec::with_capacity(edge_count);
    let mut weights: Vec<BigDecimal> = Vec::new();
    let mut weighted: Option<bool> = None;
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        if arcs.len() == edge_count {
            return Err(parse_err(line, format!("more than the declared {edge_count} arcs")));
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(parse_err(line, "expected `src dst [weight]`"));
        }
        let u = parse_count(toks[0], line, "source")?;
        let v = parse_count(toks[1], line, "target")?;
        for w in [u, v] {
            if w >= vertex_count {
                return Err(parse_err(line, format!("vertex {w} out of range 0..{vertex_count}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        let has_weight = toks.len() == 3;
        match weighted {
            None => weighted = Some(has_weight),
            Some(expected) if expected != has_weight => {
                return Err(parse_err(line, "weights must be given on all arcs or on none"));
            }
            _ => {}
        }
        if has_weight {
            let w = BigDecimal::from_str(toks[2])
                .map_err(|_| parse_err(line, format!("invalid weight `{}`", toks[2])))?;
            weights.push(w);
        }
        arcs.push((u, v));
    }
    if arcs.len() != edge_count {
        return Err(parse_err(
            last_line,
            format!("header declares {edge_count} arcs but {} were given", arcs.len()),
        ));
    }

    let located = |e: Error| match e {
        Error::DuplicateArc(u, v) => {
            let line = text
                .lines()
                .enumerate()
                .filter(|(_, l)| {
                    let t: Vec<&str> = l.split_whitespace().collect();
                    t.len() >= 2 && t[0].parse() == Ok(u) && t[1].parse() == Ok(v)
                })
                .map(|(i, _)| i + 1)
                .nth(1)
                .unwrap_or(last_line);
            parse_err(line, format!("duplicate arc {u} -> {v}"))
        }
        other => other,
    };

    if weighted == Some(true) {
        let triples: Vec<_> = arcs.iter().zip(weights).map(|(&(u, v), w)| (u, v, w)).collect();
        Ok(EdgeList::Weighted(WeightedDigraph::new(vertex_count, &triples).map_err(located)?))
    } else {
        Ok(EdgeList::Plain(Digraph::from_edge_list(vertex_count, &arcs).map_err(located)?))
    }
}

pub fn write_digraph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.arc_count());
    for &(u, v) in g.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_weighted(wg: &WeightedDigraph) -> String {
    let g = wg.digraph();
    let mut out = format!("{} {}\n", g.vertex_count(), g.arc_count());
    for (&(u, v), w) in g.arcs().iter().zip(wg.weights()) {
        let _ = writeln!(out, "{u} {v} {}", w.to_plain_string());
    }
    out
}

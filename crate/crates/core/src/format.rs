//! Plain-text graph, partition and coloring formats.
//!
//! Graph: a header `p <n> <m>` followed by `m` lines `<u> <v>` with
//! `0 ≤ u < v < n`. Partition: one block per line, space-separated ids.
//! Coloring: one `<vertex> <color>` line per vertex of the padded set.
//! Lines starting with `#` are comments in every format.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{BlockPartition, Graph, StrongColoring, Vertex};

/// Non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.strip_suffix('\r').unwrap_or(line)))
        .filter(|(_, line)| !line.starts_with('#'))
}

pub(crate) fn parse_id(token: &str, line: usize) -> Result<usize, ParseError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::syntax(line, format!("expected a decimal id, found {token:?}")));
    }
    token
        .parse()
        .map_err(|_| ParseError::syntax(line, format!("id {token} is too large")))
}

pub(crate) fn parse_fields<const N: usize>(line: &str, number: usize) -> Result<[usize; N], ParseError> {
    let tokens: Vec<&str> = line.split(' ').collect();
    if tokens.len() != N {
        return Err(ParseError::syntax(
            number,
            format!("expected {N} space-separated fields, found {:?}", line),
        ));
    }
    let mut out = [0; N];
    for (slot, token) in out.iter_mut().zip(tokens) {
        *slot = parse_id(token, number)?;
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (number, header) = lines.next().ok_or_else(|| ParseError::syntax(1, "missing header"))?;
    let rest = header
        .strip_prefix("p ")
        .ok_or_else(|| ParseError::syntax(number, "header must be \"p <n> <m>\""))?;
    let [n, m] = parse_fields::<2>(rest, number)?;

    let mut edges = Vec::with_capacity(m);
    for (number, line) in lines {
        let [u, v] = parse_fields::<2>(line, number)?;
        if u > v {
            return Err(ParseError::syntax(number, format!("edge {u} {v} must list the smaller id first")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::syntax(
            text.lines().count().max(1),
            format!("header declares {m} edges but {} follow", edges.len()),
        ));
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn parse_partition(text: &str) -> Result<BlockPartition, ParseError> {
    let mut blocks = Vec::new();
    for (number, line) in content_lines(text) {
        let block = line
            .split(' ')
            .map(|t| parse_id(t, number))
            .collect::<Result<Vec<Vertex>, _>>()?;
        blocks.push(block);
    }
    if blocks.is_empty() {
        return Err(ParseError::syntax(1, "partition has no blocks"));
    }
    Ok(BlockPartition::new(blocks)?)
}

pub fn write_partition(p: &BlockPartition) -> String {
    let mut out = String::new();
    for block in p.blocks() {
        let ids: Vec<String> = block.iter().map(usize::to_string).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// Each vertex of `0..n'` must appear exactly once; lines may come in any order.
pub fn parse_coloring(text: &str) -> Result<StrongColoring, ParseError> {
    let mut entries: Vec<(usize, Vertex, usize)> = Vec::new();
    for (number, line) in content_lines(text) {
        let [v, c] = parse_fields::<2>(line, number)?;
        entries.push((number, v, c));
    }
    let len = entries.len();
    let mut colors: Vec<Option<usize>> = vec![None; len];
    for (number, v, c) in entries {
        let slot = colors
            .get_mut(v)
            .ok_or_else(|| ParseError::syntax(number, format!("vertex {v} outside 0..{len}")))?;
        if slot.replace(c).is_some() {
            return Err(ParseError::syntax(number, format!("vertex {v} colored twice")));
        }
    }
    Ok(StrongColoring(colors.into_iter().map(|c| c.expect("every slot filled")).collect()))
}

pub fn write_coloring(c: &StrongColoring) -> String {
    let mut out = String::new();
    for (v, color) in c.as_slice().iter().enumerate() {
        writeln!(out, "{v} {color}").expect("writing to a String");
    }
    out
}

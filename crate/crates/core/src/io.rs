//! Line-oriented text formats shared with the CLI.
//!
//! Graphs: `nodes N` followed by one `u v` pair per line. Line networks:
//! `rT p/q`, then ascending `pos p/q` lines, then `tx i -> j` or
//! `tx i -> j,k` lines. Demands: `u v p/q` per network link, or `v p/q`
//! per conflict vertex. `#` starts a comment anywhere on a line.

use crate::error::Error;
use crate::feasibility::DemandVector;
use crate::graph::Graph;
use crate::interference::{LineNetwork, Transmission};
use crate::rational::{format_rational, parse_rational, Rat};

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, Error> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}: {token:?}")))
}

fn parse_rat_at(line: usize, token: &str) -> Result<Rat, Error> {
    parse_rational(token).map_err(|_| parse_err(line, format!("bad rational: {token:?}")))
}

/// Parses the graph text format.
pub fn parse_graph(text: &str) -> Result<Graph, Error> {
    let mut lines = significant_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty graph file"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["nodes", count] => parse_usize(lineno, count, "node count")?,
        _ => return Err(parse_err(lineno, "expected `nodes N` header")),
    };
    let mut pairs = Vec::new();
    for (lineno, line) in lines {
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            [u, v] => pairs.push((
                parse_usize(lineno, u, "node id")?,
                parse_usize(lineno, v, "node id")?,
            )),
            _ => return Err(parse_err(lineno, "expected `u v` edge line")),
        }
    }
    Graph::new(n, pairs)
}

/// Writes the graph text format.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("nodes {}\n", g.node_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.0, e.1));
    }
    out
}

/// Parses the line-network text format.
pub fn parse_line_network(text: &str) -> Result<LineNetwork, Error> {
    let mut radius = None;
    let mut positions = Vec::new();
    let mut transmissions = Vec::new();
    for (lineno, line) in significant_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[..] {
            ["rT", value] => {
                if radius.replace(parse_rat_at(lineno, value)?).is_some() {
                    return Err(parse_err(lineno, "duplicate rT line"));
                }
            }
            ["pos", value] => positions.push(parse_rat_at(lineno, value)?),
            ["tx", tx, "->", receivers] => {
                let transmitter = parse_usize(lineno, tx, "transmitter id")?;
                let receivers = receivers
                    .split(',')
                    .map(|r| parse_usize(lineno, r, "receiver id"))
                    .collect::<Result<Vec<_>, _>>()?;
                transmissions.push(Transmission::new(transmitter, receivers)?);
            }
            _ => return Err(parse_err(lineno, "expected `rT`, `pos` or `tx` line")),
        }
    }
    let radius = radius.ok_or_else(|| parse_err(0, "missing rT line"))?;
    LineNetwork::new(positions, radius, transmissions)
}

/// Writes the line-network text format.
pub fn write_line_network(net: &LineNetwork) -> String {
    let mut out = format!("rT {}\n", format_rational(net.radius()));
    for p in net.positions() {
        out.push_str(&format!("pos {}\n", format_rational(p)));
    }
    for t in net.transmissions() {
        out.push_str(&format!("tx {}\n", t));
    }
    out
}

/// Parses per-link demands: one `u v p/q` line per edge.
pub fn parse_edge_demands(text: &str) -> Result<DemandVector, Error> {
    let mut entries = Vec::new();
    for (lineno, line) in significant_lines(text) {
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            [u, v, value] => entries.push((
                (
                    parse_usize(lineno, u, "node id")?,
                    parse_usize(lineno, v, "node id")?,
                ),
                parse_rat_at(lineno, value)?,
            )),
            _ => return Err(parse_err(lineno, "expected `u v p/q` demand line")),
        }
    }
    DemandVector::new(entries)
}

/// Writes per-link demands.
pub fn write_edge_demands(tau: &DemandVector) -> String {
    let mut out = String::new();
    for (e, value) in tau.iter() {
        out.push_str(&format!("{} {} {}\n", e.0, e.1, format_rational(value)));
    }
    out
}

/// Parses per-vertex demands for a conflict graph: one `v p/q` line per
/// vertex; vertices must appear exactly once, in any order.
pub fn parse_vertex_demands(text: &str) -> Result<Vec<Rat>, Error> {
    let mut entries = Vec::new();
    for (lineno, line) in significant_lines(text) {
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            [v, value] => entries.push((
                lineno,
                parse_usize(lineno, v, "vertex id")?,
                parse_rat_at(lineno, value)?,
            )),
            _ => return Err(parse_err(lineno, "expected `v p/q` demand line")),
        }
    }
    let mut tau = vec![None; entries.len()];
    for (lineno, v, value) in entries {
        if v >= tau.len() {
            return Err(parse_err(
                lineno,
                format!("vertex id {v} out of range for {} demand lines", tau.len()),
            ));
        }
        if tau[v].replace(value).is_some() {
            return Err(parse_err(lineno, format!("duplicate demand for vertex {v}")));
        }
    }
    Ok(tau.into_iter().map(|v| v.expect("all slots filled")).collect())
}

/// Writes per-vertex demands.
pub fn write_vertex_demands(tau: &[Rat]) -> String {
    let mut out = String::new();
    for (v, value) in tau.iter().enumerate() {
        out.push_str(&format!("{v} {}\n", format_rational(value)));
    }
    out
}

//! Plain-text graph exchange format, DIMACS-style:
//!
//! ```text
//! c optional comment lines
//! p edge <vertex-count> <edge-count>
//! e <u> <v>
//! ```
//!
//! Vertex labels are 1-based in files and mapped to 0-based dense indices.
//! The writer emits labels `index + 1`, so write-then-parse reproduces the
//! exact same indexing.

use std::io::{BufRead, Write};

use crate::error::ParseError;
use crate::graph::{Graph, Topology};

/// Parses a graph from the DIMACS-like edge-list format, with line-numbered
/// diagnostics for malformed headers, out-of-range labels, self-loops, and
/// duplicate edges.
pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut header_line = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::at(lineno, "duplicate problem line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(ParseError::at(lineno, "expected 'p edge <n> <m>'"));
                }
                let n = parse_count(tokens.next(), lineno, "vertex count")?;
                let m = parse_count(tokens.next(), lineno, "edge count")?;
                if tokens.next().is_some() {
                    return Err(ParseError::at(lineno, "trailing tokens after problem line"));
                }
                header = Some((n, m));
                header_line = lineno;
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(ParseError::at(lineno, "edge before problem line"));
                };
                let u = parse_label(tokens.next(), lineno, n)?;
                let v = parse_label(tokens.next(), lineno, n)?;
                if tokens.next().is_some() {
                    return Err(ParseError::at(lineno, "trailing tokens after edge line"));
                }
                if u == v {
                    return Err(ParseError::at(lineno, format!("self-loop at vertex {}", u + 1)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(ParseError::at(
                        lineno,
                        format!("duplicate edge {{{}, {}}}", u.min(v) + 1, u.max(v) + 1),
                    ));
                }
                edges.push((u.min(v), u.max(v)));
            }
            Some(other) => {
                return Err(ParseError::at(
                    lineno,
                    format!("unknown line type '{other}'"),
                ));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError::at(1, "missing problem line"));
    };
    if edges.len() != m {
        return Err(ParseError::at(
            header_line,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges)
        .map_err(|err| ParseError::at(header_line, format!("invalid graph: {err}")))
}

fn parse_count(token: Option<&str>, lineno: usize, what: &str) -> Result<usize, ParseError> {
    token
        .ok_or_else(|| ParseError::at(lineno, format!("missing {what}")))?
        .parse()
        .map_err(|_| ParseError::at(lineno, format!("invalid {what}")))
}

fn parse_label(token: Option<&str>, lineno: usize, n: usize) -> Result<usize, ParseError> {
    let label: usize = token
        .ok_or_else(|| ParseError::at(lineno, "missing vertex label"))?
        .parse()
        .map_err(|_| ParseError::at(lineno, "invalid vertex label"))?;
    if label == 0 || label > n {
        return Err(ParseError::at(
            lineno,
            format!("vertex label {label} out of range 1..={n}"),
        ));
    }
    Ok(label - 1)
}

/// Writes `g` in the format accepted by [`read_graph`], one `e` line per
/// edge in index order, labels 1-based.
pub fn write_graph<W: Write>(g: &Graph, mut writer: W) -> std::io::Result<()> {
    writeln!(writer, "p edge {} {}", g.vertex_count(), g.edge_count())?;
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        writeln!(writer, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

//! The `.cg` colored-graph text format.
//!
//! ```text
//! cg 2 <n> <m>
//! <tail> <head> <g1> <g2>     (m lines)
//! ```
//!
//! `#` starts a comment running to the end of the line; blank lines are
//! ignored. Vertices are 0-indexed.

use std::fmt;

use periodic_rigidity::graph::MultiplicityWarning;
use periodic_rigidity::{ColorVector, ColoredGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub graph: ColoredGraph,
    pub warnings: Vec<MultiplicityWarning>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

// Tokens of one line with comments stripped, with character columns.
fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in body.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, col + 1)),
            (true, Some((b, c))) => {
                out.push(Token { text: &body[b..byte], column: c });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push(Token { text: &body[b..], column: c });
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn count(tok: &Token<'_>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| err(line, tok.column, format!("{what} must be a non-negative integer, got `{}`", tok.text)))
}

pub fn parse_colored_graph(bytes: &[u8]) -> Result<Parsed, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        err(line, 1, "input is not valid UTF-8")
    })?;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, tokens(l))).filter(|(_, t)| !t.is_empty());

    let Some((hl, header)) = lines.next() else {
        return Err(err(1, 1, "missing `cg` header"));
    };
    if header[0].text != "cg" {
        return Err(err(hl, header[0].column, format!("bad magic `{}`, expected `cg`", header[0].text)));
    }
    let Some(dim) = header.get(1) else {
        return Err(err(hl, header[0].column + 2, "header is `cg 2 <n> <m>`"));
    };
    if dim.text != "2" {
        return Err(err(hl, dim.column, format!("unsupported dimension {}", dim.text)));
    }
    if header.len() != 4 {
        let col = header.get(4).map_or(dim.column, |t| t.column);
        return Err(err(hl, col, "header is `cg 2 <n> <m>`"));
    }
    let n = count(&header[2], hl, "vertex count")?;
    let m = count(&header[3], hl, "edge count")?;

    let mut graph = ColoredGraph::new(n);
    let mut last = hl;
    for (ln, toks) in lines {
        last = ln;
        if graph.edge_count() == m {
            return Err(err(ln, toks[0].column, format!("more than the {m} declared edges")));
        }
        if toks.len() != 4 {
            let col = toks.get(4).map_or(toks[toks.len() - 1].column, |t| t.column);
            return Err(err(ln, col, format!("edge line needs 4 integers, found {}", toks.len())));
        }
        let mut ends = [0usize; 2];
        for (k, t) in toks[..2].iter().enumerate() {
            let v: usize = t.text.parse().map_err(|_| err(ln, t.column, format!("bad vertex `{}`", t.text)))?;
            if v >= n {
                return Err(err(ln, t.column, format!("vertex {v} out of range (n = {n})")));
            }
            ends[k] = v;
        }
        let mut color = [0i64; 2];
        for (k, t) in toks[2..].iter().enumerate() {
            color[k] = t.text.parse().map_err(|_| err(ln, t.column, format!("non-integer color `{}`", t.text)))?;
        }
        graph
            .add_edge(ends[0], ends[1], ColorVector::new(color[0], color[1]))
            .map_err(|e| err(ln, 1, e.to_string()))?;
    }
    if graph.edge_count() < m {
        return Err(err(last + 1, 1, format!("expected {m} edges, found {}", graph.edge_count())));
    }
    let warnings = graph.multiplicity_warnings();
    Ok(Parsed { graph, warnings })
}

/// Canonical text: the header and one edge per line, no comments.
pub fn serialize_colored_graph(graph: &ColoredGraph) -> String {
    let mut s = format!("cg 2 {} {}\n", graph.vertex_count(), graph.edge_count());
    for e in graph.edges() {
        s.push_str(&format!("{} {} {} {}\n", e.tail, e.head, e.color.g1, e.color.g2));
    }
    s
}

//! Graph file formats: the edge-list text format (loops and parallel
//! edges allowed) and graph6 (simple graphs only).
//!
//! Edge list: first line `n m`, then `m` lines `u v` with 0-based vertex
//! ids; `u == v` denotes a loop and repeated pairs denote parallel edges.

use decyc_core::generators::{is_simple, named, Named};
use decyc_core::graph::{CubicGraph, Graph};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("graph6 encodes simple graphs only; {0}")]
    Graph6Multigraph(String),
    #[error("graph is not cubic: {0}")]
    DegreeViolation(String),
    #[error("unknown graph name or unreadable path: {0}")]
    UnknownInput(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| FormatError::Parse("empty input".into()))?;
    let mut parts = header.split_whitespace();
    let n: u32 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| FormatError::Parse("header must be 'n m'".into()))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| FormatError::Parse("header must be 'n m'".into()))?;
    let mut edges = Vec::with_capacity(m);
    for line in lines.by_ref().take(m) {
        let mut it = line.split_whitespace();
        let u: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| FormatError::Parse(format!("bad edge line '{line}'")))?;
        let v: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| FormatError::Parse(format!("bad edge line '{line}'")))?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::Parse(format!(
            "expected {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges).map_err(|e| FormatError::Parse(e.to_string()))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edge_list() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses one graph6 line (optionally with the `>>graph6<<` header).
pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let line = line.trim().trim_start_matches(">>graph6<<");
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Parse("empty graph6 line".into()));
    }
    let (n, rest) = if bytes[0] == 126 {
        // Long form; not needed at desk scale but parsed for robustness.
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(FormatError::Parse("unsupported graph6 size".into()));
        }
        let n = ((bytes[1] as u32 - 63) << 12)
            | ((bytes[2] as u32 - 63) << 6)
            | (bytes[3] as u32 - 63);
        (n, &bytes[4..])
    } else {
        ((bytes[0] as u32).wrapping_sub(63), &bytes[1..])
    };
    if n > 255 {
        return Err(FormatError::Parse(format!("graph6 order {n} too large")));
    }
    let need_bits = (n as usize) * (n as usize - 1) / 2;
    let need_bytes = need_bits.div_ceil(6);
    if rest.len() < need_bytes {
        return Err(FormatError::Parse("graph6 line too short".into()));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for col in 1..n {
        for row in 0..col {
            let byte = rest[bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(FormatError::Parse("invalid graph6 byte".into()));
            }
            let val = (byte - 63) >> (5 - (bit % 6)) & 1;
            if val == 1 {
                edges.push((row, col));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| FormatError::Parse(e.to_string()))
}

/// Encodes a simple graph as one graph6 line.
pub fn write_graph6(g: &Graph) -> Result<String, FormatError> {
    if !is_simple(g) {
        return Err(FormatError::Graph6Multigraph(
            "use the edge-list format for loops or parallel edges".into(),
        ));
    }
    let n = g.vertex_count();
    if n > 62 {
        return Err(FormatError::Parse("graph6 writer supports n <= 62".into()));
    }
    let mut out = vec![(n + 63) as u8];
    let mut acc = 0u8;
    let mut used = 0u8;
    for col in 1..n {
        for row in 0..col {
            acc <<= 1;
            if g.are_adjacent(decyc_core::Vertex(row), decyc_core::Vertex(col)) {
                acc |= 1;
            }
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        acc <<= 6 - used;
        out.push(acc + 63);
    }
    Ok(String::from_utf8(out).expect("printable range"))
}

/// Cubic validation on top of the raw parsers.
pub fn cubic_from_graph(g: Graph) -> Result<CubicGraph, FormatError> {
    CubicGraph::from_graph(g).map_err(|e| FormatError::DegreeViolation(e.to_string()))
}

/// Resolves a CLI input: a built-in graph name, or a path whose format
/// is taken from `force` or sniffed from the extension (`.g6` means
/// graph6, anything else is an edge list).
pub fn load_cubic(input: &str, force: Option<GraphFormat>) -> Result<CubicGraph, FormatError> {
    if let Some(which) = Named::from_name(&input.to_lowercase()) {
        return Ok(named(which));
    }
    let path = Path::new(input);
    if !path.exists() {
        return Err(FormatError::UnknownInput(input.into()));
    }
    let text = std::fs::read_to_string(path)?;
    let format = force.unwrap_or_else(|| {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            _ => GraphFormat::EdgeList,
        }
    });
    let g = match format {
        GraphFormat::EdgeList => parse_edge_list(&text)?,
        GraphFormat::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| FormatError::Parse("empty graph6 file".into()))?;
            parse_graph6(line)?
        }
    };
    cubic_from_graph(g)
}

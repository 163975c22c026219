//! Edge-list and graph6 readers/writers.

use std::collections::HashMap;

use crate::error::GraphError;
use crate::graph::Graph;

/// Parses `u v` lines. Blank lines and `#` comments are skipped; labels are
/// relabeled densely in order of first appearance. Repeated lines become
/// parallel edges.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut labels: HashMap<u64, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || GraphError::MalformedLine {
            line: lineno + 1,
            text: line.to_string(),
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(malformed());
        }
        let u: u64 = tokens[0].parse().map_err(|_| malformed())?;
        let v: u64 = tokens[1].parse().map_err(|_| malformed())?;
        if u == v {
            return Err(GraphError::SelfLoop(u as usize));
        }
        let mut id = |x: u64| {
            let next = labels.len();
            *labels.entry(x).or_insert(next)
        };
        let (a, b) = (id(u), id(v));
        edges.push((a, b));
    }
    Graph::new(labels.len(), edges)
}

fn graph6_err(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedGraph6(msg.into())
}

/// Decodes a graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(graph6_err("empty input"));
    }
    if let Some(b) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(graph6_err(format!("byte {b} outside printable range")));
    }
    let (n, body) = match bytes {
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(graph6_err("truncated size header"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(graph6_err("truncated size header"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
        [] => unreachable!(),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(graph6_err(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| ((body[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

/// Encodes a simple graph as graph6 (no header). Multigraphs cannot be
/// represented and are rejected.
pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    if g.has_parallel_edges() {
        return Err(graph6_err("graph6 cannot encode parallel edges"));
    }
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in g.edges() {
        let (i, j) = (u.min(v), u.max(v));
        let k = j * (j - 1) / 2 + i;
        data[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(data.into_iter().map(|b| b + 63));
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

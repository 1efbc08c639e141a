//! graph6 encoding: a size header, then the upper triangle of the adjacency
//! matrix in column order, packed six bits per printable character.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::GraphError;
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` as graph6 bytes (no header, no newline).
pub fn encode_bytes(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    out
}

/// Encodes `g` as a graph6 string.
pub fn encode(g: &Graph) -> String {
    // graph6 output is always printable ASCII.
    encode_bytes(g).into_iter().map(char::from).collect()
}

fn sextet(c: u8) -> Result<usize, GraphError> {
    if (63..=126).contains(&c) {
        Ok((c - 63) as usize)
    } else {
        Err(GraphError::Graph6("character outside the range '?'..'~'"))
    }
}

/// Decodes one graph6 line. An optional `>>graph6<<` prefix and surrounding
/// whitespace are accepted.
pub fn decode(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let b = text.as_bytes();
    if b.is_empty() {
        return Err(GraphError::Graph6("empty input"));
    }
    let (n, body) = if b[0] != 126 {
        (sextet(b[0])?, &b[1..])
    } else if b.len() >= 2 && b[1] != 126 {
        if b.len() < 4 {
            return Err(GraphError::Graph6("truncated size header"));
        }
        let mut n = 0;
        for &c in &b[1..4] {
            n = (n << 6) | sextet(c)?;
        }
        (n, &b[4..])
    } else {
        if b.len() < 8 {
            return Err(GraphError::Graph6("truncated size header"));
        }
        let mut n = 0usize;
        for &c in &b[2..8] {
            n = (n << 6) | sextet(c)?;
        }
        (n, &b[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(GraphError::Graph6("body length does not match vertex count"));
    }
    let mut g = Graph::empty(n);
    let mut pos = 0;
    for v in 1..n {
        for u in 0..v {
            let c = sextet(body[pos / 6])?;
            if c >> (5 - pos % 6) & 1 == 1 {
                g.set(u, v);
            }
            pos += 1;
        }
    }
    if bits % 6 != 0 {
        let last = sextet(body[body.len() - 1])?;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(GraphError::Graph6("nonzero padding bits"));
        }
    }
    for &c in body {
        sextet(c)?;
    }
    Ok(g)
}

//! graph6 encoding and decoding.
//!
//! Layout: the order `N(n)` followed by the upper triangle of the adjacency
//! matrix in column order (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits
//! per byte, most significant bit first, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::SympGraph;

const OFFSET: u8 = 63;
const HEADER: &[u8] = b">>graph6<<";

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
}

/// Encodes without header or trailing newline.
pub fn encode(g: &SympGraph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_order(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    out
}

pub fn encode_string(g: &SympGraph) -> String {
    // graph6 bytes are printable ASCII by construction.
    String::from_utf8(encode(g)).expect("graph6 output is ASCII")
}

fn sextet(b: u8) -> Result<u64> {
    if !(OFFSET..=126).contains(&b) {
        return Err(Error::Graph6(format!(
            "byte {b:#04x} outside the printable range 63..=126"
        )));
    }
    Ok((b - OFFSET) as u64)
}

fn parse_order(data: &[u8]) -> Result<(usize, usize)> {
    let first = *data
        .first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if first != 126 {
        return Ok((sextet(first)? as usize, 1));
    }
    let (len, start) = if data.get(1) == Some(&126) {
        (6, 2)
    } else {
        (3, 1)
    };
    let digits = data
        .get(start..start + len)
        .ok_or_else(|| Error::Graph6("truncated order field".into()))?;
    let mut n = 0u64;
    for &d in digits {
        n = (n << 6) | sextet(d)?;
    }
    Ok((n as usize, start + len))
}

/// Decodes one graph; accepts an optional `>>graph6<<` header and trailing
/// whitespace. The result is unlabelled.
pub fn decode(data: &[u8]) -> Result<SympGraph> {
    let mut data = data.strip_prefix(HEADER).unwrap_or(data);
    while let Some((last, rest)) = data.split_last() {
        if last.is_ascii_whitespace() {
            data = rest;
        } else {
            break;
        }
    }
    match data.first() {
        Some(b':') => return Err(Error::Graph6("sparse6 input is not supported".into())),
        Some(b'&') => return Err(Error::Graph6("digraph6 input is not supported".into())),
        _ => {}
    }
    let (n, used) = parse_order(data)?;
    let body = &data[used..];
    let bits = n * n.saturating_sub(1) / 2;
    let want = bits.div_ceil(6);
    if body.len() != want {
        return Err(Error::Graph6(format!(
            "expected {want} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = SympGraph::empty(n);
    let mut edges = Vec::new();
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            if k >= bits {
                break 'outer;
            }
            let byte = sextet(body[k / 6])?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    for b in body {
        sextet(*b)?;
    }
    if !edges.is_empty() {
        g = g.with_toggled(&edges)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_symplectic;

    #[test]
    fn triangle_is_bw() {
        let k3 = SympGraph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode_string(&k3), "Bw");
    }

    #[test]
    fn single_vertex_is_at_sign() {
        assert_eq!(encode_string(&SympGraph::empty(1)), "@");
        assert_eq!(encode_string(&SympGraph::empty(0)), "?");
    }

    #[test]
    fn five_vertex_reference_string() {
        // Same graph as in the petgraph graph6 test suite.
        let g = SympGraph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_string(&g), "DQc");
        assert_eq!(decode(b"DQc").unwrap(), g);
    }

    #[test]
    fn long_order_field() {
        let g = build_symplectic(3).unwrap();
        let s = encode(&g);
        assert_eq!(&s[..4], &[126, 63, 63 + 0, 63 + 63]);
        assert_eq!(s.len(), 4 + (63 * 62 / 2usize).div_ceil(6));
        assert_eq!(decode(&s).unwrap(), g.unlabelled());
    }

    #[test]
    fn header_and_newline_accepted() {
        let g = decode(b">>graph6<<Bw\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(decode(b"").is_err());
        assert!(decode(b"B").is_err());
        assert!(decode(b"Bww").is_err());
        assert!(decode(b"B\x20").is_err());
        assert!(decode(b":Fa@x^").is_err());
        assert!(decode(b"~?").is_err());
    }
}

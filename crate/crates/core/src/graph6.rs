//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix, read column by column, packed into big-endian 6-bit
//! groups offset by 63.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0:#04x} at position {1} is outside the printable range 63..=126")]
    InvalidByte(u8, usize),
    #[error("malformed size header")]
    BadHeader,
    #[error("graph6 size {0} unsupported (must be 1..=64)")]
    UnsupportedSize(usize),
    #[error("expected {expected} data bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("nonzero padding bits in the final byte")]
    TrailingBits,
}

const HEADER: &str = ">>graph6<<";

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte(b, i));
        }
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            // 36-bit sizes are far beyond the supported range
            return Err(if bytes.len() >= 2 && bytes[1] == 126 {
                Graph6Error::UnsupportedSize(usize::MAX)
            } else {
                Graph6Error::BadHeader
            });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Graph6Error::UnsupportedSize(n));
    }
    let expected = data_len(n);
    if body.len() != expected {
        return Err(Graph6Error::BadLength {
            expected,
            found: body.len(),
        });
    }
    let total_bits = n * (n - 1) / 2;
    if total_bits % 6 != 0 {
        let pad = 6 - total_bits % 6;
        let last = body[expected - 1] - 63;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::TrailingBits);
        }
    }
    let mut g = Graph::empty(n).expect("size checked");
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + data_len(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        assert_eq!(emit_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(emit_graph6(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(emit_graph6(&Graph::empty(2).unwrap()), "A?");
    }

    #[test]
    fn known_strings() {
        // the 5-vertex graph with edges 0-2, 0-4, 1-3, 3-4
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        let k6 = Graph::complete(6).unwrap();
        assert_eq!(emit_graph6(&k6), "E~~w");
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(parse_graph6(&emit_graph6(&c5)).unwrap(), c5);
    }

    #[test]
    fn large_header() {
        let g = Graph::path(64).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
        let g63 = Graph::cycle(63).unwrap();
        assert_eq!(parse_graph6(&emit_graph6(&g63)).unwrap(), g63);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(
            parse_graph6("@@@"),
            Err(Graph6Error::BadLength { expected: 0, found: 2 })
        );
        assert_eq!(
            parse_graph6("D?"),
            Err(Graph6Error::BadLength { expected: 2, found: 1 })
        );
        // K2 uses one bit; "A`" sets a padding bit
        assert_eq!(parse_graph6("A`"), Err(Graph6Error::TrailingBits));
        assert!(matches!(parse_graph6("D\u{1}c"), Err(Graph6Error::InvalidByte(..))));
        assert_eq!(parse_graph6("?"), Err(Graph6Error::UnsupportedSize(0)));
        // 65 vertices
        assert!(matches!(parse_graph6("~?@@"), Err(Graph6Error::UnsupportedSize(65))));
        assert_eq!(parse_graph6(">>graph6<<@").unwrap().order(), 1);
    }
}

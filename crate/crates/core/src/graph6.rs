//! graph6 encoding and decoding.
//!
//! The order `n` is written as one byte `n + 63` for `n <= 62`, as `126`
//! followed by three 6-bit groups for `n <= 258047`, and otherwise as
//! `126 126` followed by six 6-bit groups. The upper triangle of the
//! adjacency matrix follows in column order (`(0,1), (0,2), (1,2), (0,3), ...`),
//! big-endian within 6-bit groups, zero-padded, each group offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("truncated order field")]
    TruncatedOrder,
    #[error("expected {expected} adjacency bytes for {order} vertices, found {found}")]
    WrongLength { order: usize, expected: usize, found: usize },
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    push_order(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { offset, byte });
        }
    }
    let groups = |slice: &[u8]| slice.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Graph6Error::TruncatedOrder);
        }
        (groups(&bytes[2..8]), &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedOrder);
        }
        (groups(&bytes[1..4]), &bytes[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::WrongLength { order: n, expected, found: body.len() });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        // Vectors from the format description and common tools.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
        assert_eq!(encode(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(decode(">>graph6<<C~\n").unwrap(), Graph::complete(4).unwrap());
    }

    #[test]
    fn long_order_field() {
        let g = Graph::from_edges(100, &[(0, 99), (40, 41)]).unwrap();
        let s = encode(&g);
        assert_eq!(s.as_bytes()[0], 126);
        // 100 = 0b000001_100100
        assert_eq!(&s.as_bytes()[1..4], &[63, 64, 63 + 36]);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert!(matches!(decode("C~~"), Err(Graph6Error::WrongLength { .. })));
        assert!(matches!(decode("C "), Err(Graph6Error::BadByte { offset: 1, .. })));
        // K_2 with a stray padding bit
        assert_eq!(decode("A`"), Err(Graph6Error::NonzeroPadding));
        assert_eq!(decode("~?"), Err(Graph6Error::TruncatedOrder));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..80, seed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut state = seed | 1;
            for v in 1..n {
                for u in 0..v {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 3 == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            prop_assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}

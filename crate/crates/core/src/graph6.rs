//! graph6 encoding (the format used by nauty's `geng` and most published
//! small-graph corpora).
//!
//! Header: `n + 63` for `n < 63`, otherwise `~` followed by three 6-bit groups.
//! Body: the upper triangle of the adjacency matrix, column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six bits per byte, most
//! significant bit first, zero padded, each byte offset by 63.

use thiserror::Error;

use crate::graph::{Graph, VertexSet, MAX_VERTICES};

/// Default limit on `n` accepted by [`parse_graph6`].
pub const DEFAULT_CAP: usize = MAX_VERTICES;

/// Largest `n` expressible with the 4-byte header.
pub const LONG_FORM_MAX: usize = 258_047;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("8-byte size header at offset {offset} is not supported")]
    UnsupportedLongHeader { offset: usize },
    #[error("truncated header at offset {offset}")]
    TruncatedHeader { offset: usize },
    #[error("truncated adjacency payload at offset {offset}: need {expected} bytes, found {found}")]
    Truncated { offset: usize, expected: usize, found: usize },
    #[error("trailing data at offset {offset}")]
    Trailing { offset: usize },
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    parse_graph6_with_cap(text, DEFAULT_CAP)
}

pub fn parse_graph6_with_cap(text: &str, cap: usize) -> Result<Graph, Graph6Error> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (base, line) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, line),
    };
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { offset: base + i, byte: b });
        }
    }

    let (n, body_start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.get(1) == Some(&126) {
        return Err(Graph6Error::UnsupportedLongHeader { offset: base });
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader { offset: base + bytes.len() });
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    if n > cap.min(MAX_VERTICES) {
        return Err(Graph6Error::TooLarge { n, cap: cap.min(MAX_VERTICES) });
    }

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: base + bytes.len(),
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::Trailing { offset: base + body_start + expected });
    }

    let mut adj = vec![VertexSet::new(); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(n, adj))
}

pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > LONG_FORM_MAX {
        return Err(Graph6Error::TooLarge { n, cap: LONG_FORM_MAX });
    }
    let mut out = Vec::with_capacity(4 + n * n / 12 + 1);
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Expected strings below were hand-encoded from the bit layout in the
    // module docs, e.g. C5 has upper-triangle bits
    // x01 x02 x12 x03 x13 x23 x04 x14 x24 x34 = 1 0 1 0 0 1 1 0 0 1,
    // padded to 101001 100100 = 41, 36 -> 'h', 'c'.

    #[test]
    fn decodes_known_strings() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.edges().collect::<Vec<_>>()), (2, vec![(0, 1)]));

        let e2 = parse_graph6("A?").unwrap();
        assert_eq!((e2.n(), e2.edge_count()), (2, 0));

        let c5 = parse_graph6("Dhc").unwrap();
        assert_eq!(
            c5.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        );

        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn encodes_known_graphs() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(emit_graph6(&k2).unwrap(), "A_");
        let c5 = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(emit_graph6(&c5).unwrap(), "Dhc");
        assert_eq!(emit_graph6(&Graph::empty(0).unwrap()).unwrap(), "?");
    }

    #[test]
    fn long_form_header() {
        let mut g = Graph::empty(70).unwrap();
        g.add_edge(0, 69).unwrap();
        g.add_edge(12, 13).unwrap();
        let s = emit_graph6(&g).unwrap();
        // 70 = 000000 000001 000110
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 69]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn error_offsets() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(
            parse_graph6("D h"),
            Err(Graph6Error::InvalidByte { offset: 1, byte: b' ' })
        );
        assert_eq!(
            parse_graph6("Dh"),
            Err(Graph6Error::Truncated { offset: 2, expected: 2, found: 1 })
        );
        assert_eq!(parse_graph6("Dhcc"), Err(Graph6Error::Trailing { offset: 3 }));
        assert_eq!(parse_graph6("~~??????"), Err(Graph6Error::UnsupportedLongHeader { offset: 0 }));
        assert_eq!(parse_graph6("~?"), Err(Graph6Error::TruncatedHeader { offset: 2 }));
        assert!(matches!(
            parse_graph6_with_cap("Dhc", 4),
            Err(Graph6Error::TooLarge { n: 5, cap: 4 })
        ));
    }
}

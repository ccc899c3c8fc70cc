//! Interchange formats: graph6 and a plain edge list.
//!
//! graph6 bytes are `63 + x` for a 6-bit value `x`. The vertex count is one
//! byte when `n <= 62`, `126` plus three bytes when `n <= 258047`, and
//! `126 126` plus six bytes beyond that. The upper triangle is read in column
//! order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed big-endian into 6-bit
//! groups and zero-padded.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;

fn encode_count(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(BIAS + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(BIAS + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(BIAS + ((n >> shift) & 0x3f) as u8);
        }
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_count(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            bits += 1;
            if bits == 6 {
                out.push(BIAS + acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(BIAS + (acc << (6 - bits)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn sextet(b: u8, pos: usize) -> Result<usize> {
    if !(BIAS..=BIAS + 63).contains(&b) {
        return Err(Error::parse(1, format!("byte {b} at offset {pos} is outside the graph6 range")));
    }
    Ok((b - BIAS) as usize)
}

/// Decodes one graph6 string. An optional `>>graph6<<` header is accepted;
/// trailing whitespace is ignored.
pub fn decode_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse(1, "empty graph6 string"));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        (sextet(bytes[0], 0)?, 1)
    } else if bytes.len() > 1 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Error::parse(1, "truncated graph6 vertex count"));
        }
        let mut n = 0;
        for (i, &b) in bytes[2..8].iter().enumerate() {
            n = (n << 6) | sextet(b, i + 2)?;
        }
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(Error::parse(1, "truncated graph6 vertex count"));
        }
        let mut n = 0;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | sextet(b, i + 1)?;
        }
        (n, 4)
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let expected = total_bits.div_ceil(6);
    if bytes.len() - pos != expected {
        return Err(Error::parse(
            1,
            format!(
                "graph6 body has {} bytes, expected {expected} for n = {n}",
                bytes.len() - pos
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    let mut cur = 0;
    for v in 1..n {
        for u in 0..v {
            if bit % 6 == 0 {
                cur = sextet(bytes[pos], pos)?;
                pos += 1;
            }
            if (cur >> (5 - bit % 6)) & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 && cur & ((1 << (6 - bit % 6)) - 1) != 0 {
        return Err(Error::parse(1, "nonzero padding bits in graph6 string"));
    }
    Graph::from_edge_list(n, &edges)
}

/// `n m` on the first line, then one `u v` line per edge with `u < v`.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
    let (n, m) = parse_pair(hl, header)?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        edges.push(parse_pair(ln, line)?);
    }
    if edges.len() != m {
        return Err(Error::parse(
            hl,
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let fields: Vec<_> = s.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(line, format!("expected two integers, found `{s}`")));
    }
    let num = |f: &str| {
        f.parse::<usize>()
            .map_err(|e| Error::parse(line, format!("`{f}`: {e}")))
    };
    Ok((num(fields[0])?, num(fields[1])?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_graph6_strings() {
        // K_3 is "Bw"; the path 0-1-2 has bits x01=1, x02=0, x12=1
        let k3 = Graph::cycle(3).unwrap();
        assert_eq!(encode_graph6(&k3), "Bw");
        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(encode_graph6(&p3), "Bg");
        assert_eq!(encode_graph6(&Graph::empty(0)), "?");
        assert_eq!(encode_graph6(&Graph::empty(1)), "@");
        // bits 101001 100100 for C_5
        assert_eq!(encode_graph6(&Graph::cycle(5).unwrap()), "Dhc");
    }

    #[test]
    fn decode_known() {
        assert_eq!(decode_graph6("Bw").unwrap(), Graph::cycle(3).unwrap());
        assert_eq!(decode_graph6(">>graph6<<Dhc\n").unwrap(), Graph::cycle(5).unwrap());
    }

    #[test]
    fn long_count_form() {
        let g = Graph::cycle(63).unwrap();
        let s = encode_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_graph6() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("B").is_err());
        assert!(decode_graph6("Bww").is_err());
        assert!(decode_graph6("B\x7f").is_err());
        // padding bits set: n = 3 uses 3 of 6 bits
        assert!(decode_graph6("Bx").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(4).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(read_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(read_edge_list("").is_err());
        assert!(read_edge_list("3 2\n0 1\n").is_err());
        assert!(read_edge_list("3 1\n0 x\n").is_err());
        assert!(read_edge_list("3 1\n0 5\n").is_err());
    }
}

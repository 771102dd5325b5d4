//! graph6 encoding of undirected simple graphs.
//!
//! Header: `n + 63` for `n < 63`; `126` followed by three 6-bit groups for
//! `n < 258048`; `126 126` followed by six groups otherwise. The body packs the
//! upper triangle column by column (x01, x02, x12, x03, ...) six bits per byte,
//! most significant bit first, zero padded, each byte offset by 63.

use super::Graph;
use crate::error::ParseError;

const OFFSET: u8 = 63;
const MAX_BYTE: u8 = 126;
const SMALL_LIMIT: usize = 63;
const MEDIUM_LIMIT: usize = 258_048;

/// Parses one graph6 line. A trailing `\n` or `\r\n` and an optional
/// `>>graph6<<` prefix are accepted.
pub fn parse_graph6(input: &[u8]) -> Result<Graph, ParseError> {
    let mut bytes = input;
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    let base = if bytes.starts_with(b">>graph6<<") {
        10
    } else {
        0
    };
    let bytes = &bytes[base..];
    if bytes.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=MAX_BYTE).contains(&b) {
            return Err(ParseError::InvalidByte {
                offset: base + i,
                byte: b,
            });
        }
    }

    let (n, header_len) = decode_size(bytes, base)?;
    if n == 0 {
        return Err(ParseError::ZeroNodes(0));
    }
    let bit_count = n * (n - 1) / 2;
    let expected = bit_count.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() != expected {
        return Err(ParseError::BodyLength {
            offset: base + header_len,
            n,
            expected,
            found: body.len(),
        });
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if bit_count % 6 != 0 {
        let last = body[body.len() - 1] - OFFSET;
        let pad_mask = (1u8 << (6 - bit_count % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(ParseError::Padding {
                offset: base + header_len + body.len() - 1,
            });
        }
    }
    Ok(Graph::new(n, edges).expect("decoded edges are in range and loop-free"))
}

fn decode_size(bytes: &[u8], base: usize) -> Result<(usize, usize), ParseError> {
    let group = |slice: &[u8]| {
        slice
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - OFFSET))
    };
    if bytes[0] != MAX_BYTE {
        return Ok((usize::from(bytes[0] - OFFSET), 1));
    }
    if bytes.len() >= 2 && bytes[1] == MAX_BYTE {
        if bytes.len() < 8 {
            return Err(ParseError::TruncatedHeader {
                offset: base + bytes.len(),
            });
        }
        return Ok((group(&bytes[2..8]), 8));
    }
    if bytes.len() < 4 {
        return Err(ParseError::TruncatedHeader {
            offset: base + bytes.len(),
        });
    }
    Ok((group(&bytes[1..4]), 4))
}

/// Encodes `g` in canonical graph6 form (shortest header, no trailing newline).
pub fn serialize_graph6(g: &Graph) -> Vec<u8> {
    let n = g.node_count();
    let mut out = Vec::with_capacity(8 + n * n / 12 + 1);
    let push_groups = |out: &mut Vec<u8>, value: usize, groups: u32| {
        for i in (0..groups).rev() {
            out.push(((value >> (6 * i)) & 0x3f) as u8 + OFFSET);
        }
    };
    if n < SMALL_LIMIT {
        out.push(n as u8 + OFFSET);
    } else if n < MEDIUM_LIMIT {
        out.push(MAX_BYTE);
        push_groups(&mut out, n, 3);
    } else {
        out.push(MAX_BYTE);
        out.push(MAX_BYTE);
        push_groups(&mut out, n, 6);
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        let nbrs = g.neighbors(v);
        for u in 0..v {
            acc = (acc << 1) | u8::from(nbrs.binary_search(&u).is_ok());
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

//! Small named graphs used as regression fixtures for the isomorphism harness.
//!
//! Each matrix is stored row by row exactly as printed; `fixture_graph`
//! reads the upper triangle and the tests below check the transcription is
//! symmetric with a zero diagonal.

use super::Graph;
use crate::error::GraphError;

pub const FIXTURE_NAMES: [&str; 6] = [
    "decalin",
    "bicyclopentyl",
    "cospectral10",
    "regular4_10",
    "rook4x4",
    "shrikhande",
];

// Decalin (two fused six-rings).
const DECALIN: [&str; 10] = [
    "0110001000",
    "1000010001",
    "1001000000",
    "0010100000",
    "0001010000",
    "0100100000",
    "1000000100",
    "0000001010",
    "0000000101",
    "0100000010",
];

// Bicyclopentyl (two five-rings joined by an edge); 1-WL equivalent to decalin.
const BICYCLOPENTYL: [&str; 10] = [
    "0110010000",
    "1000001001",
    "1001000000",
    "0010100000",
    "0001010000",
    "1000100000",
    "0100000100",
    "0000001010",
    "0000000101",
    "0100000010",
];

// A cospectral 4-regular graph on 10 nodes.
const COSPECTRAL10: [&str; 10] = [
    "0101010100",
    "1011100000",
    "0100101001",
    "1100010100",
    "0110001001",
    "1001000011",
    "0010100110",
    "1001001010",
    "0000011101",
    "0010110010",
];

// A second 4-regular graph on 10 nodes, 2-WL equivalent to the cospectral one.
const REGULAR4_10: [&str; 10] = [
    "0101001100",
    "1011100000",
    "0100110001",
    "1100010100",
    "0110001001",
    "0011000110",
    "1000100011",
    "1001010010",
    "0000011101",
    "0010101010",
];

// The 4x4 rook's graph, srg(16, 6, 2, 2).
const ROOK4X4: [&str; 16] = [
    "0111100010001000",
    "1011010001000100",
    "1101001000100010",
    "1110000100010001",
    "1000011110001000",
    "0100101101000100",
    "0010110100100010",
    "0001111000010001",
    "1000100001111000",
    "0100010010110100",
    "0010001011010010",
    "0001000111100001",
    "1000100010000111",
    "0100010001001011",
    "0010001000101101",
    "0001000100011110",
];

// The Shrikhande graph, srg(16, 6, 2, 2).
const SHRIKHANDE: [&str; 16] = [
    "0101110000001001",
    "1010011000001100",
    "0101001100000110",
    "1010100100000011",
    "1001010111000000",
    "1100101001100000",
    "0110010100110000",
    "0011101010010000",
    "0000100101011100",
    "0000110010100110",
    "0000011001010011",
    "0000001110101001",
    "1100000010010101",
    "0110000011001010",
    "0011000001100101",
    "1001000000111010",
];

fn rows(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "decalin" => &DECALIN,
        "bicyclopentyl" => &BICYCLOPENTYL,
        "cospectral10" => &COSPECTRAL10,
        "regular4_10" => &REGULAR4_10,
        "rook4x4" => &ROOK4X4,
        "shrikhande" => &SHRIKHANDE,
        _ => return None,
    })
}

/// Returns one of the named fixture graphs in [`FIXTURE_NAMES`].
pub fn fixture_graph(name: &str) -> Result<Graph, GraphError> {
    let rows = rows(name).ok_or_else(|| GraphError::UnknownFixture(name.to_string()))?;
    let n = rows.len();
    let edges = (0..n).flat_map(|u| {
        let row = rows[u].as_bytes();
        (u + 1..n)
            .filter(move |&v| row[v] == b'1')
            .map(move |v| (u, v))
    });
    Graph::new(n, edges)
}

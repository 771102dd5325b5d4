//! 1-dimensional Weisfeiler–Leman colour refinement.

use crate::graph::Graph;

// splitmix64 finaliser: a fixed, platform-independent mixing step so that
// colours from different graphs are directly comparable.
pub(crate) fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Stable per-node colours and the number of refinement rounds taken.
pub fn wl1_colors(g: &Graph) -> (Vec<u64>, usize) {
    let n = g.node_count();
    let mut colors = vec![0u64; n];
    let mut classes = 1;
    let mut rounds = 0;
    let mut scratch = Vec::new();
    for _ in 0..n.max(1) {
        let next: Vec<u64> = (0..n)
            .map(|u| {
                scratch.clear();
                scratch.extend(g.neighbors(u).iter().map(|&v| colors[v]));
                scratch.sort_unstable();
                scratch.iter().fold(mix(colors[u] ^ 0x5151_5151), |h, &c| {
                    mix(h ^ c.rotate_left(17))
                })
            })
            .collect();
        rounds += 1;
        let mut distinct = next.clone();
        distinct.sort_unstable();
        distinct.dedup();
        colors = next;
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    (colors, rounds)
}

/// Multiset of stable colours, as sorted `(colour, count)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorHistogram {
    pub rounds: usize,
    pub counts: Vec<(u64, usize)>,
}

pub fn wl1_refine(g: &Graph) -> ColorHistogram {
    let (mut colors, rounds) = wl1_colors(g);
    colors.sort_unstable();
    let mut counts: Vec<(u64, usize)> = Vec::new();
    for c in colors {
        match counts.last_mut() {
            Some((last, k)) if *last == c => *k += 1,
            _ => counts.push((c, 1)),
        }
    }
    ColorHistogram { rounds, counts }
}

//! Inputs shared by the benchmarks.

use eden_core::{erdos_renyi, Graph};

/// `count` Erdős–Rényi graphs on `n` nodes, seeded `seed, seed + 1, ...`.
pub fn er_corpus(count: usize, n: usize, p: f64, seed: u64) -> Vec<Graph> {
    (0..count as u64)
        .map(|k| erdos_renyi(n, p, seed + k).expect("valid edge probability"))
        .collect()
}

/// A connected-ish sparse graph with average degree about `avg_degree`.
pub fn sparse_graph(n: usize, avg_degree: f64, seed: u64) -> Graph {
    let p = (avg_degree / (n.max(2) - 1) as f64).min(1.0);
    erdos_renyi(n, p, seed).expect("valid edge probability")
}

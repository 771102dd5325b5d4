//! All-pairs hop distances by breadth-first search.

use crate::graph::Graph;
use rayon::prelude::*;
use std::collections::VecDeque;

/// Shortest-path hop counts; `None` marks an unreachable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Option<u32>>,
}

impl DistanceMatrix {
    /// Builds a matrix from explicit rows. Panics if the rows are not square.
    pub fn from_rows(rows: Vec<Vec<Option<u32>>>) -> Self {
        let n = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == n),
            "distance rows must be square"
        );
        DistanceMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Option<u32>] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Option<u32>]> {
        self.entries.chunks(self.n)
    }

    /// Largest finite entry, if any off-diagonal pair is reachable or not.
    pub fn max_finite(&self) -> u32 {
        self.entries.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn has_unreachable(&self) -> bool {
        self.entries.iter().any(Option::is_none)
    }
}

/// Per-node eccentricity within its component: `values[i]` is the largest
/// finite distance in row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterVector(pub Vec<u32>);

impl DiameterVector {
    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

/// Runs one BFS per source; sources are processed in parallel but each row
/// is computed independently, so the result does not depend on scheduling.
pub fn apsp(g: &Graph) -> DistanceMatrix {
    let n = g.node_count();
    let rows: Vec<Vec<Option<u32>>> = (0..n).into_par_iter().map(|s| bfs_row(g, s)).collect();
    DistanceMatrix {
        n,
        entries: rows.into_iter().flatten().collect(),
    }
}

fn bfs_row(g: &Graph, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u].map(|d| d + 1);
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn diameter_vector(d: &DistanceMatrix) -> DiameterVector {
    DiameterVector(
        d.rows()
            .map(|row| row.iter().flatten().copied().max().unwrap_or(0))
            .collect(),
    )
}

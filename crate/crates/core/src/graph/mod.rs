//! Undirected simple graphs over positional node ids, and node permutations.

mod edge_list;
mod fixtures;
mod graph6;
mod random;

pub use edge_list::parse_edge_list;
pub use fixtures::{fixture_graph, FIXTURE_NAMES};
pub use graph6::{parse_graph6, serialize_graph6};
pub use random::{erdos_renyi, random_permutation};

use crate::error::GraphError;
use std::collections::BTreeSet;

/// An undirected simple graph on nodes `0..n`.
///
/// Edges are stored once, as `(u, v)` with `u < v`, in sorted order, so two
/// graphs with the same labelled edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges in either orientation.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// The graph with no edges on `n` nodes.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let closing = if n > 2 { Some((n - 1, 0)) } else { None };
        Graph::new(n, (1..n).map(|v| (v - 1, v)).chain(closing))
    }

    /// Builds a graph from a 0/1 adjacency matrix given row by row.
    ///
    /// Only the upper triangle is read; callers that care about symmetry
    /// check it themselves.
    pub fn from_adjacency_rows(rows: &[&[u8]]) -> Result<Self, GraphError> {
        let n = rows.len();
        let edges = (0..n).flat_map(|u| {
            (u + 1..n)
                .filter(move |&v| rows[u][v] != 0)
                .map(move |v| (u, v))
        });
        Graph::new(n, edges)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Dense symmetric 0/1 adjacency matrix.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }
}

/// A bijection on `0..n`. Applied to a graph it sends node `u` to `p(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self, GraphError> {
        let n = mapping.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GraphError::InvalidPermutation(format!(
                    "value {x} repeated or out of range for length {n}"
                )));
            }
        }
        Ok(Permutation(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        Permutation(p)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, u: usize) -> usize {
        self.0[u]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different length"
        );
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// Matrix form P with `P[u][p(u)] = 1`, so that `A' = PᵀAP` is the
    /// adjacency matrix of the relabelled graph.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.len();
        let mut m = vec![vec![0u8; n]; n];
        for (u, &pu) in self.0.iter().enumerate() {
            m[u][pu] = 1;
        }
        m
    }

    /// Moves row `u` of `rows` to position `p(u)`.
    pub fn permute_rows<T: Clone>(&self, rows: &[T]) -> Vec<T> {
        assert_eq!(rows.len(), self.len());
        let mut out = rows.to_vec();
        for (u, row) in rows.iter().enumerate() {
            out[self.0[u]] = row.clone();
        }
        out
    }
}

/// Relabels every node `u` of `g` as `p(u)`.
pub fn apply_permutation(g: &Graph, p: &Permutation) -> Result<Graph, GraphError> {
    if p.len() != g.node_count() {
        return Err(GraphError::LengthMismatch {
            perm: p.len(),
            n: g.node_count(),
        });
    }
    Graph::new(g.n, g.edges.iter().map(|&(u, v)| (p.apply(u), p.apply(v))))
}

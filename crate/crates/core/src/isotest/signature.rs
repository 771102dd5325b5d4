//! Permutation-invariant graph signatures and pairwise verdicts.

use crate::encoders::{eden_encode, EncoderConfig};
use crate::error::IsoError;
use crate::graph::Graph;
use crate::spectral::Encoding;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// More sign-ambiguous columns than this makes row comparison inconclusive.
const MAX_FLIP_COLUMNS: usize = 12;

/// Encoding rows as a multiset, plus the spectrum they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    pub n: usize,
    pub sorted_singular_values: Vec<f64>,
    /// Encoding rows in lexicographic order.
    pub sorted_rows: Vec<Vec<f64>>,
    /// Repeated retained spectrum: the row multiset is not a graph invariant.
    pub degenerate: bool,
    /// Columns whose sign is not determined by the graph.
    pub sign_ambiguous: Vec<bool>,
}

impl Signature {
    pub fn from_encoding(e: &Encoding) -> Self {
        let mut sv = e.spectrum.clone();
        sv.sort_by(|a, b| b.total_cmp(a));
        let mut rows: Vec<Vec<f64>> = (0..e.node_count()).map(|i| e.row(i)).collect();
        rows.sort_by(|a, b| lex_cmp(a, b));
        Signature {
            n: e.node_count(),
            sorted_singular_values: sv,
            sorted_rows: rows,
            degenerate: e.repeated_spectrum,
            sign_ambiguous: e.sign_ambiguous.clone(),
        }
    }

    pub fn dims(&self) -> usize {
        self.sorted_singular_values.len()
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(a.len().cmp(&b.len()))
}

/// EDEN signature of `g`. The dimension is capped at the node count.
pub fn graph_signature(g: &Graph, cfg: &EncoderConfig) -> Result<Signature, IsoError> {
    let cfg = EncoderConfig {
        m: cfg.m.min(g.node_count()),
        ..*cfg
    };
    Ok(Signature::from_encoding(&eden_encode(g, &cfg)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub tau_sv: f64,
    pub tau_row: f64,
    pub safety: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            tau_sv: 1e-6,
            tau_row: 1e-6,
            safety: DEFAULT_SAFETY,
        }
    }
}

pub const DEFAULT_SAFETY: f64 = 10.0;
pub const THRESHOLD_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    NonIsomorphic,
    PossiblyIsomorphic,
    Inconclusive,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::NonIsomorphic => "NON_ISOMORPHIC",
            VerdictKind::PossiblyIsomorphic => "POSSIBLY_ISOMORPHIC",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictReason {
    NodeCount,
    SingularValues,
    Rows,
    DegenerateSpectrum,
    TooManySignAmbiguities,
    SignaturesMatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub reason: VerdictReason,
}

impl Verdict {
    fn new(verdict: VerdictKind, reason: VerdictReason) -> Self {
        Verdict { verdict, reason }
    }
}

/// Largest absolute difference between the sorted singular values.
pub fn singular_value_gap(a: &Signature, b: &Signature) -> f64 {
    if a.dims() != b.dims() {
        return f64::INFINITY;
    }
    a.sorted_singular_values
        .iter()
        .zip(&b.sorted_singular_values)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn row_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn flip_columns(sig: &Signature) -> Vec<usize> {
    (0..sig.dims())
        .filter(|&c| sig.sign_ambiguous.get(c).copied().unwrap_or(false))
        .collect()
}

fn flipped_rows(rows: &[Vec<f64>], cols: &[usize], mask: u32) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|r| {
            let mut r = r.clone();
            for (bit, &c) in cols.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    r[c] = -r[c];
                }
            }
            r
        })
        .collect()
}

/// Columns to enumerate sign flips over, or `None` if there are too many.
fn ambiguous_union(a: &Signature, b: &Signature) -> Option<Vec<usize>> {
    let mut cols = flip_columns(a);
    cols.extend(flip_columns(b));
    cols.sort_unstable();
    cols.dedup();
    (cols.len() <= MAX_FLIP_COLUMNS).then_some(cols)
}

/// Does a bijection between the row multisets exist that moves no row by
/// more than `tau` (max-abs), allowing sign flips on ambiguous columns?
pub fn rows_within(a: &Signature, b: &Signature, tau: f64) -> Option<bool> {
    if a.n != b.n || a.dims() != b.dims() {
        return Some(false);
    }
    let cols = ambiguous_union(a, b)?;
    Some((0..1u32 << cols.len()).any(|mask| {
        let mut rows = flipped_rows(&b.sorted_rows, &cols, mask);
        rows.sort_by(|x, y| lex_cmp(x, y));
        let aligned = a
            .sorted_rows
            .iter()
            .zip(&rows)
            .all(|(x, y)| row_gap(x, y) <= tau);
        aligned || perfect_matching(&a.sorted_rows, &rows, tau)
    }))
}

/// Bottleneck distance between the row multisets, minimised over sign flips
/// of ambiguous columns.
pub fn row_multiset_distance(a: &Signature, b: &Signature) -> Option<f64> {
    if a.n != b.n || a.dims() != b.dims() {
        return Some(f64::INFINITY);
    }
    let cols = ambiguous_union(a, b)?;
    Some(
        (0..1u32 << cols.len())
            .map(|mask| bottleneck(&a.sorted_rows, &flipped_rows(&b.sorted_rows, &cols, mask)))
            .fold(f64::INFINITY, f64::min),
    )
}

fn bottleneck(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut candidates: Vec<f64> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| row_gap(x, y)))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // the smallest candidate admitting a perfect matching
    let (mut lo, mut hi) = (0, candidates.len().saturating_sub(1));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates.get(lo).copied().unwrap_or(0.0)
}

// Kuhn's augmenting-path matching on the "within tau" bipartite graph.
fn perfect_matching(a: &[Vec<f64>], b: &[Vec<f64>], tau: f64) -> bool {
    let n = a.len();
    let ok: Vec<Vec<usize>> = a
        .iter()
        .map(|x| (0..n).filter(|&j| row_gap(x, &b[j]) <= tau).collect())
        .collect();
    if ok.iter().any(Vec::is_empty) {
        return false;
    }
    let mut owner = vec![usize::MAX; n];
    fn augment(i: usize, ok: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for &j in &ok[i] {
            if !seen[j] {
                seen[j] = true;
                if owner[j] == usize::MAX || augment(owner[j], ok, owner, seen) {
                    owner[j] = i;
                    return true;
                }
            }
        }
        false
    }
    let mut seen = vec![false; n];
    for i in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        if !augment(i, &ok, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

/// Three-valued comparison of two signatures.
///
/// `NON_ISOMORPHIC` only fires on a graph invariant: node count, singular
/// values, or (for non-degenerate spectra) the row multiset up to the sign of
/// ambiguous columns.
pub fn compare_signatures(a: &Signature, b: &Signature, t: &Thresholds) -> Verdict {
    use VerdictKind::*;
    use VerdictReason::*;
    if a.n != b.n {
        return Verdict::new(NonIsomorphic, NodeCount);
    }
    if singular_value_gap(a, b) > t.tau_sv {
        return Verdict::new(NonIsomorphic, SingularValues);
    }
    if a.degenerate || b.degenerate {
        return Verdict::new(Inconclusive, DegenerateSpectrum);
    }
    match rows_within(a, b, t.tau_row) {
        None => Verdict::new(Inconclusive, TooManySignAmbiguities),
        Some(false) => Verdict::new(NonIsomorphic, Rows),
        Some(true) => Verdict::new(PossiblyIsomorphic, SignaturesMatch),
    }
}

pub fn compare_pair(
    ga: &Graph,
    gb: &Graph,
    t: &Thresholds,
    cfg: &EncoderConfig,
) -> Result<Verdict, IsoError> {
    if ga.node_count() != gb.node_count() {
        return Ok(Verdict::new(
            VerdictKind::NonIsomorphic,
            VerdictReason::NodeCount,
        ));
    }
    let a = graph_signature(ga, cfg)?;
    let b = graph_signature(gb, cfg)?;
    Ok(compare_signatures(&a, &b, t))
}

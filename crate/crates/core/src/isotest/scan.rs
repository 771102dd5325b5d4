//! All-pairs verdicts over a corpus of pairwise non-isomorphic graphs.

use super::signature::{
    compare_signatures, graph_signature, Signature, Thresholds, Verdict, VerdictKind,
};
use crate::encoders::EncoderConfig;
use crate::error::IsoError;
use crate::graph::Graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisjudgeReport {
    pub corpus_size: usize,
    pub pairs_total: u64,
    pub non_isomorphic: u64,
    pub possibly_isomorphic: u64,
    pub inconclusive: u64,
    /// Pairs not separated, assuming the corpus has no isomorphic duplicates.
    pub misjudged: u64,
    pub wall_ms: u64,
}

/// A pair of corpus indices (`i < j`) that was not separated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePair {
    pub i: usize,
    pub j: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub report: MisjudgeReport,
    pub candidates: Vec<CandidatePair>,
}

pub fn dataset_scan(
    corpus: &[Graph],
    t: &Thresholds,
    cfg: &EncoderConfig,
) -> Result<MisjudgeReport, IsoError> {
    Ok(dataset_scan_detailed(corpus, t, cfg)?.report)
}

/// Like [`dataset_scan`], also returning every unseparated pair.
///
/// Only pairs with equal node count whose largest singular values lie within
/// `tau_sv` are compared explicitly; every other pair is separated by node
/// count or singular values, so the counts equal a full all-pairs scan.
pub fn dataset_scan_detailed(
    corpus: &[Graph],
    t: &Thresholds,
    cfg: &EncoderConfig,
) -> Result<ScanOutcome, IsoError> {
    let start = Instant::now();
    let sigs: Vec<Signature> = corpus
        .par_iter()
        .map(|g| graph_signature(g, cfg))
        .collect::<Result<_, _>>()?;

    let lead = |s: &Signature| s.sorted_singular_values.first().copied().unwrap_or(0.0);
    let mut order: Vec<usize> = (0..sigs.len()).collect();
    order.sort_by(|&a, &b| {
        sigs[a]
            .n
            .cmp(&sigs[b].n)
            .then(lead(&sigs[a]).total_cmp(&lead(&sigs[b])))
    });

    let mut candidates: Vec<CandidatePair> = (0..order.len())
        .into_par_iter()
        .flat_map_iter(|k| {
            let a = &sigs[order[k]];
            let sigs = &sigs;
            let order = &order;
            order[k + 1..]
                .iter()
                .take_while(move |&&o| sigs[o].n == a.n && lead(&sigs[o]) - lead(a) <= t.tau_sv)
                .filter_map(move |&o| {
                    let verdict = compare_signatures(a, &sigs[o], t);
                    (verdict.verdict != VerdictKind::NonIsomorphic).then(|| {
                        let (i, j) = (order[k].min(o), order[k].max(o));
                        CandidatePair { i, j, verdict }
                    })
                })
        })
        .collect();
    candidates.sort_by_key(|c| (c.i, c.j));

    let count = |k| candidates.iter().filter(|c| c.verdict.verdict == k).count() as u64;
    let n = corpus.len() as u64;
    let pairs_total = n * n.saturating_sub(1) / 2;
    let possibly_isomorphic = count(VerdictKind::PossiblyIsomorphic);
    let inconclusive = count(VerdictKind::Inconclusive);
    let report = MisjudgeReport {
        corpus_size: corpus.len(),
        pairs_total,
        non_isomorphic: pairs_total - possibly_isomorphic - inconclusive,
        possibly_isomorphic,
        inconclusive,
        misjudged: possibly_isomorphic + inconclusive,
        wall_ms: start.elapsed().as_millis() as u64,
    };
    Ok(ScanOutcome { report, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        apply_permutation, erdos_renyi, fixture_graph, random_permutation, FIXTURE_NAMES,
    };
    use crate::isotest::compare_pair;

    fn brute(corpus: &[Graph], t: &Thresholds, cfg: &EncoderConfig) -> Vec<CandidatePair> {
        let mut out = Vec::new();
        for i in 0..corpus.len() {
            for j in i + 1..corpus.len() {
                let verdict = compare_pair(&corpus[i], &corpus[j], t, cfg).unwrap();
                if verdict.verdict != VerdictKind::NonIsomorphic {
                    out.push(CandidatePair { i, j, verdict });
                }
            }
        }
        out
    }

    #[test]
    fn matches_all_pairs() {
        let t = Thresholds::default();
        let cfg = EncoderConfig::default();
        let mut corpus: Vec<Graph> = FIXTURE_NAMES
            .iter()
            .map(|n| fixture_graph(n).unwrap())
            .collect();
        for s in 0..30 {
            corpus.push(erdos_renyi(5 + (s % 3) as usize, 0.5, s).unwrap());
        }
        let g = corpus[0].clone();
        corpus.push(apply_permutation(&g, &random_permutation(10, 1).unwrap()).unwrap());
        let out = dataset_scan_detailed(&corpus, &t, &cfg).unwrap();
        assert_eq!(out.candidates, brute(&corpus, &t, &cfg));
        let r = out.report;
        assert_eq!(
            r.pairs_total,
            (corpus.len() * (corpus.len() - 1) / 2) as u64
        );
        assert_eq!(r.non_isomorphic + r.misjudged, r.pairs_total);
        assert!(out
            .candidates
            .iter()
            .any(|c| (c.i, c.j) == (0, corpus.len() - 1)));
        assert!(out
            .candidates
            .iter()
            .any(|c| c.verdict.verdict == VerdictKind::Inconclusive));
    }

    #[test]
    fn tiny_corpora() {
        let t = Thresholds::default();
        let cfg = EncoderConfig::default();
        let r = dataset_scan(&[], &t, &cfg).unwrap();
        assert_eq!((r.pairs_total, r.misjudged), (0, 0));
        let r = dataset_scan(&[Graph::path(3).unwrap()], &t, &cfg).unwrap();
        assert_eq!(r.pairs_total, 0);
    }

    #[test]
    fn report_json_fields() {
        let r = dataset_scan(
            &[Graph::path(3).unwrap(), Graph::complete(3).unwrap()],
            &Thresholds::default(),
            &EncoderConfig::default(),
        )
        .unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for k in [
            "corpus_size",
            "pairs_total",
            "non_isomorphic",
            "possibly_isomorphic",
            "inconclusive",
            "misjudged",
            "wall_ms",
        ] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(r.non_isomorphic, 1);
    }
}

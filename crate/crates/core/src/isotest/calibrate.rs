//! Empirical thresholds from permuted copies of a corpus.

use super::signature::{
    graph_signature, row_multiset_distance, singular_value_gap, Thresholds, THRESHOLD_FLOOR,
};
use super::wl::mix;
use crate::encoders::EncoderConfig;
use crate::error::IsoError;
use crate::graph::{apply_permutation, random_permutation, Graph};
use rayon::prelude::*;

/// Worst discrepancies seen between a graph and its own permuted copies.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Discrepancy {
    pub singular_values: f64,
    pub rows: f64,
}

impl Discrepancy {
    fn max(self, o: Discrepancy) -> Discrepancy {
        Discrepancy {
            singular_values: self.singular_values.max(o.singular_values),
            rows: self.rows.max(o.rows),
        }
    }
}

/// Max numerical discrepancy over `trials` random relabellings of every graph.
///
/// Row discrepancies are only collected from non-degenerate spectra, since
/// degenerate pairs never reach the row comparison.
pub fn measure_discrepancy(
    corpus: &[Graph],
    trials: usize,
    seed: u64,
    cfg: &EncoderConfig,
) -> Result<Discrepancy, IsoError> {
    if corpus.is_empty() {
        return Err(IsoError::EmptyCorpus);
    }
    if trials == 0 {
        return Err(IsoError::NoTrials);
    }
    corpus
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            let base = graph_signature(g, cfg)?;
            let mut worst = Discrepancy::default();
            for t in 0..trials {
                let s = mix(seed ^ mix(gi as u64) ^ mix((t as u64) << 32 | 0x5eed));
                let p = random_permutation(g.node_count(), s)?;
                let other = graph_signature(&apply_permutation(g, &p)?, cfg)?;
                worst.singular_values =
                    worst.singular_values.max(singular_value_gap(&base, &other));
                if !base.degenerate && !other.degenerate {
                    if let Some(d) = row_multiset_distance(&base, &other) {
                        worst.rows = worst.rows.max(d);
                    }
                }
            }
            Ok(worst)
        })
        .try_reduce(Discrepancy::default, |a, b| Ok(a.max(b)))
}

/// Thresholds set to `safety` times the observed discrepancy, floored at
/// [`THRESHOLD_FLOOR`].
pub fn calibrate_thresholds(
    corpus: &[Graph],
    trials: usize,
    seed: u64,
    safety: f64,
    cfg: &EncoderConfig,
) -> Result<Thresholds, IsoError> {
    let d = measure_discrepancy(corpus, trials, seed, cfg)?;
    Ok(Thresholds {
        tau_sv: (d.singular_values * safety).max(THRESHOLD_FLOOR),
        tau_row: (d.rows * safety).max(THRESHOLD_FLOOR),
        safety,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::erdos_renyi;

    #[test]
    fn errors() {
        let cfg = EncoderConfig::default();
        assert_eq!(
            calibrate_thresholds(&[], 3, 0, 10.0, &cfg),
            Err(IsoError::EmptyCorpus)
        );
        let g = Graph::path(4).unwrap();
        assert_eq!(
            calibrate_thresholds(&[g], 0, 0, 10.0, &cfg),
            Err(IsoError::NoTrials)
        );
    }

    #[test]
    fn small_and_deterministic() {
        let cfg = EncoderConfig::default();
        let corpus: Vec<Graph> = (0..20).map(|i| erdos_renyi(12, 0.4, i).unwrap()).collect();
        let a = calibrate_thresholds(&corpus, 4, 9, 10.0, &cfg).unwrap();
        let b = calibrate_thresholds(&corpus, 4, 9, 10.0, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.tau_sv >= THRESHOLD_FLOOR && a.tau_sv < 1e-6, "{a:?}");
        assert!(a.tau_row >= THRESHOLD_FLOOR && a.tau_row < 1e-4, "{a:?}");
    }
}

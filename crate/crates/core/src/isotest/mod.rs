//! Isomorphism screening built on EDEN signatures, with WL and exact
//! references.

mod calibrate;
mod exact;
mod scan;
mod signature;
mod wl;

pub use calibrate::{calibrate_thresholds, measure_discrepancy, Discrepancy};
pub use exact::{exact_isomorphic, EXACT_NODE_CAP};
pub use scan::{dataset_scan, dataset_scan_detailed, CandidatePair, MisjudgeReport, ScanOutcome};
pub use signature::{
    compare_pair, compare_signatures, graph_signature, row_multiset_distance, rows_within,
    singular_value_gap, Signature, Thresholds, Verdict, VerdictKind, VerdictReason, DEFAULT_SAFETY,
    THRESHOLD_FLOOR,
};
pub use wl::{wl1_colors, wl1_refine, ColorHistogram};

//! Permutation-equivariant node encodings from graph distances, baseline
//! encoders, and an isomorphism screening harness built on them.
//!
//! The main pipeline is [`apsp`] → [`phase_propagation`] → [`pca_project`],
//! bundled as [`eden_encode`].

pub mod distances;
pub mod encoders;
pub mod error;
pub mod graph;
pub mod isotest;
pub mod spectral;

pub use distances::{apsp, diameter_vector, DiameterVector, DistanceMatrix};
pub use encoders::{
    baseline_matrix, eden_encode, encode_baseline, laplacian, laplacian_pe, normalize_unit,
    phase_propagation, phase_propagation_with, Baseline, EncoderConfig, LaplacianSelection,
    NormalizeScope, PhaseMatrix, BASELINE_UNREACHABLE, DEFAULT_UNREACHABLE,
};
pub use error::{GraphError, IsoError, ParseError, SpectralError};
pub use graph::{
    apply_permutation, erdos_renyi, fixture_graph, parse_edge_list, parse_graph6,
    random_permutation, serialize_graph6, Graph, Permutation, FIXTURE_NAMES,
};
pub use isotest::{
    calibrate_thresholds, compare_pair, compare_signatures, dataset_scan, exact_isomorphic,
    graph_signature, wl1_refine, ColorHistogram, MisjudgeReport, Signature, Thresholds, Verdict,
    VerdictKind, VerdictReason,
};
pub use nalgebra::DMatrix;
pub use spectral::{
    fix_signs, pca_fit, pca_project, sym_eigendecomp, Centering, Encoding, PcaOptions, Projection,
    SpectralDecomposition,
};

//! Node encoders: the cosine phase-propagated distance encoding, the three
//! linear distance baselines, the Laplacian eigenvector baseline, and the
//! `[0, 1]` normalisation used for colouring.

use crate::distances::{apsp, diameter_vector, DistanceMatrix};
use crate::error::SpectralError;
use crate::graph::Graph;
use crate::spectral::{
    fix_signs, pca_project, sym_eigendecomp, Centering, Encoding, PcaOptions, DEFAULT_GAP_TOL,
    DEFAULT_TIE_TOL,
};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_UNREACHABLE: f64 = -1.5;
/// Value the linear baselines assign to unreachable pairs.
pub const BASELINE_UNREACHABLE: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncoderConfig {
    pub m: usize,
    pub centering: Centering,
    pub gap_tol: f64,
    pub tie_tol: f64,
    /// Phase value for unreachable pairs; must be below -1.
    pub unreachable_value: f64,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        EncoderConfig {
            m: 3,
            centering: Centering::ColumnMean,
            gap_tol: DEFAULT_GAP_TOL,
            tie_tol: DEFAULT_TIE_TOL,
            unreachable_value: DEFAULT_UNREACHABLE,
        }
    }
}

impl EncoderConfig {
    pub fn with_dims(m: usize) -> Self {
        EncoderConfig {
            m,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), SpectralError> {
        if self.m == 0 {
            return Err(SpectralError::Config("dimension must be at least 1".into()));
        }
        if self.unreachable_value >= -1.0 || self.unreachable_value.is_nan() {
            return Err(SpectralError::Config(format!(
                "unreachable value {} must be below -1",
                self.unreachable_value
            )));
        }
        if !(self.gap_tol >= 0.0 && self.tie_tol >= 0.0) {
            return Err(SpectralError::Config(
                "tolerances must be non-negative".into(),
            ));
        }
        Ok(())
    }

    pub fn pca_options(&self) -> PcaOptions {
        PcaOptions {
            centering: self.centering,
            gap_tol: self.gap_tol,
            tie_tol: self.tie_tol,
        }
    }

    fn check_dims(&self, max: usize) -> Result<(), SpectralError> {
        self.validate()?;
        if self.m > max {
            return Err(SpectralError::Dimension { m: self.m, max });
        }
        Ok(())
    }
}

/// Cosine-mapped distance matrix; row `i` runs from 1 at node `i` to -1 at
/// its farthest reachable node.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatrix(pub DMatrix<f64>);

impl PhaseMatrix {
    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }
}

pub fn phase_propagation(d: &DistanceMatrix) -> PhaseMatrix {
    phase_propagation_with(d, DEFAULT_UNREACHABLE)
}

/// `cos(π·D[i][j] / d_i)` for reachable pairs, `unreachable` otherwise.
/// A node that reaches only itself gets 1 on the diagonal and `unreachable`
/// elsewhere in its row.
pub fn phase_propagation_with(d: &DistanceMatrix, unreachable: f64) -> PhaseMatrix {
    let n = d.node_count();
    let diam = diameter_vector(d);
    let mut out = DMatrix::from_element(n, n, unreachable);
    for i in 0..n {
        let di = diam.values()[i];
        for j in 0..n {
            match d.get(i, j) {
                Some(0) => out[(i, j)] = 1.0,
                Some(h) if di > 0 => out[(i, j)] = (PI * f64::from(h) / f64::from(di)).cos(),
                _ => {}
            }
        }
    }
    PhaseMatrix(out)
}

/// Distance → phase → principal components.
pub fn eden_encode(g: &Graph, cfg: &EncoderConfig) -> Result<Encoding, SpectralError> {
    cfg.check_dims(g.node_count())?;
    let phase = phase_propagation_with(&apsp(g), cfg.unreachable_value);
    pca_project(&phase.0, cfg.m, &cfg.pca_options())
}

/// The linear replacements for phase propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Baseline {
    /// Raw hop counts.
    S1,
    /// `(D - min) / (max - min)`.
    S2,
    /// `1 - (D - min) / (max - min)`.
    S3,
}

/// Intermediate matrix of a baseline. The flag is true when all finite
/// entries are equal, in which case S2 maps them to 0 and S3 to 1.
pub fn baseline_matrix(d: &DistanceMatrix, mode: Baseline) -> (DMatrix<f64>, bool) {
    let n = d.node_count();
    let finite = || d.rows().flat_map(|r| r.iter().flatten().copied());
    let lo = f64::from(finite().min().unwrap_or(0));
    let hi = f64::from(finite().max().unwrap_or(0));
    let flat = hi == lo;
    let m = DMatrix::from_fn(n, n, |i, j| match d.get(i, j) {
        None => BASELINE_UNREACHABLE,
        Some(h) => {
            let h = f64::from(h);
            let scaled = if flat { 0.0 } else { (h - lo) / (hi - lo) };
            match mode {
                Baseline::S1 => h,
                Baseline::S2 => scaled,
                Baseline::S3 => 1.0 - scaled,
            }
        }
    });
    (m, flat && mode != Baseline::S1)
}

pub fn encode_baseline(
    g: &Graph,
    mode: Baseline,
    cfg: &EncoderConfig,
) -> Result<Encoding, SpectralError> {
    cfg.check_dims(g.node_count())?;
    let (x, flat) = baseline_matrix(&apsp(g), mode);
    if flat {
        log::warn!(
            "{mode:?}: all finite distances are equal; normalised entries set to a constant"
        );
    }
    pca_project(&x, cfg.m, &cfg.pca_options())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LaplacianSelection {
    /// Skip the smallest eigenvalue, take the next `m` in increasing order.
    SmallestNontrivial,
    /// The `m` largest, in decreasing order.
    Largest,
}

/// Combinatorial Laplacian `Deg - A`.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut l = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
    }
    for u in 0..n {
        l[(u, u)] = g.degree(u) as f64;
    }
    l
}

/// Eigenvectors of the graph Laplacian as node features.
pub fn laplacian_pe(
    g: &Graph,
    which: LaplacianSelection,
    cfg: &EncoderConfig,
) -> Result<Encoding, SpectralError> {
    let n = g.node_count();
    let max = match which {
        LaplacianSelection::SmallestNontrivial => n - 1,
        LaplacianSelection::Largest => n,
    };
    cfg.check_dims(max)?;
    let m = cfg.m;
    let dec = fix_signs(sym_eigendecomp(&laplacian(g))?, cfg.tie_tol);

    // positions into the descending eigenvalue list, in selection order
    let picked: Vec<usize> = match which {
        LaplacianSelection::SmallestNontrivial => (1..=m).map(|k| n - 1 - k).collect(),
        LaplacianSelection::Largest => (0..m).collect(),
    };
    let lo = picked.iter().min().copied().unwrap_or(0).saturating_sub(1);
    let hi = (picked.iter().max().copied().unwrap_or(0) + 1).min(n - 1);
    let lam = &dec.eigenvalues;
    let repeated = (lo..hi).any(|k| lam[k] - lam[k + 1] < cfg.gap_tol);

    Ok(Encoding {
        values: DMatrix::from_fn(n, m, |i, c| dec.eigenvectors[(i, picked[c])]),
        spectrum: picked.iter().map(|&k| lam[k]).collect(),
        repeated_spectrum: repeated,
        sign_ambiguous: picked.iter().map(|&k| dec.sign_ambiguous[k]).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NormalizeScope {
    /// One min/max over the whole matrix.
    #[default]
    Global,
    PerRow,
}

/// Affine rescale of the encoding values into `[0, 1]`. Constant input (or,
/// per row, a constant row) maps to 0.5; the returned flag reports it.
pub fn normalize_unit(e: &Encoding, scope: NormalizeScope) -> (Encoding, bool) {
    let v = &e.values;
    let mut out = v.clone();
    let mut constant = false;
    let mut rescale = |idx: &mut dyn Iterator<Item = (usize, usize)>| {
        let cells: Vec<(usize, usize)> = idx.collect();
        let lo = cells.iter().map(|&c| v[c]).fold(f64::INFINITY, f64::min);
        let hi = cells
            .iter()
            .map(|&c| v[c])
            .fold(f64::NEG_INFINITY, f64::max);
        for &c in &cells {
            out[c] = if hi > lo {
                (v[c] - lo) / (hi - lo)
            } else {
                0.5
            };
        }
        if hi <= lo && !cells.is_empty() {
            constant = true;
        }
    };
    let (rows, cols) = v.shape();
    match scope {
        NormalizeScope::Global => {
            rescale(&mut (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))))
        }
        NormalizeScope::PerRow => {
            for i in 0..rows {
                rescale(&mut (0..cols).map(move |j| (i, j)));
            }
        }
    }
    if constant {
        log::warn!("normalize_unit: constant input mapped to 0.5");
    }
    (
        Encoding {
            values: out,
            ..e.clone()
        },
        constant,
    )
}

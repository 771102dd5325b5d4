//! Symmetric eigendecomposition with a deterministic sign convention, and the
//! principal-component projection built on it.
//!
//! The eigensolver is Householder tridiagonalisation followed by implicit QL
//! with Wilkinson-style shifts. It runs sequentially so identical input bits
//! always produce identical output bits.

use crate::error::SpectralError;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Iteration cap for the QL step of a single eigenvalue.
pub const MAX_SWEEPS: usize = 64;
pub const DEFAULT_GAP_TOL: f64 = 1e-6;
pub const DEFAULT_TIE_TOL: f64 = 1e-9;
const SYMMETRY_TOL: f64 = 1e-10;

/// Eigenpairs of a symmetric matrix, eigenvalues non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: DMatrix<f64>,
    /// Set by [`fix_signs`] when no permutation-invariant rule can orient column `k`.
    pub sign_ambiguous: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Centering {
    /// Subtract each column's mean before projecting.
    #[default]
    ColumnMean,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcaOptions {
    pub centering: Centering,
    pub gap_tol: f64,
    pub tie_tol: f64,
}

impl Default for PcaOptions {
    fn default() -> Self {
        PcaOptions {
            centering: Centering::ColumnMean,
            gap_tol: DEFAULT_GAP_TOL,
            tie_tol: DEFAULT_TIE_TOL,
        }
    }
}

/// Per-node features: an `n × m` matrix and the spectrum it was cut from.
#[derive(Debug, Clone, PartialEq)]
pub struct Encoding {
    pub values: DMatrix<f64>,
    /// Singular values for projection encoders (non-increasing); selected
    /// Laplacian eigenvalues, in selection order, for spectral baselines.
    pub spectrum: Vec<f64>,
    /// Retained spectrum has a repeated value (within `gap_tol`) or touches the
    /// first discarded value, so the retained subspace basis is not unique.
    pub repeated_spectrum: bool,
    /// Per retained column: the sign could not be fixed invariantly.
    pub sign_ambiguous: Vec<bool>,
}

impl Encoding {
    pub fn node_count(&self) -> usize {
        self.values.nrows()
    }

    pub fn dims(&self) -> usize {
        self.values.ncols()
    }

    /// Either source of non-uniqueness is present.
    pub fn degenerate(&self) -> bool {
        self.repeated_spectrum || self.sign_ambiguous.iter().any(|&a| a)
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.values.row(i).iter().copied().collect()
    }
}

/// Eigendecomposition of a symmetric matrix.
pub fn sym_eigendecomp(m: &DMatrix<f64>) -> Result<SpectralDecomposition, SpectralError> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(SpectralError::NotSquare {
            rows: n,
            cols: m.ncols(),
        });
    }
    let scale = m.iter().fold(1.0f64, |a, &x| a.max(x.abs()));
    for j in 0..n {
        for i in j + 1..n {
            let diff = (m[(i, j)] - m[(j, i)]).abs();
            if diff > SYMMETRY_TOL * scale || diff.is_nan() {
                return Err(SpectralError::NotSymmetric { i, j, diff });
            }
        }
    }
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: vec![],
            eigenvectors: DMatrix::zeros(0, 0),
            sign_ambiguous: vec![],
        });
    }

    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 0.5 * (m[(i, j)] + m[(j, i)])).collect())
        .collect();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e);
    tridiagonal_ql(&mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[b].total_cmp(&d[a]).then(a.cmp(&b)));
    let eigenvalues = order.iter().map(|&k| d[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, c| v[i][order[c]]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        sign_ambiguous: vec![false; n],
    })
}

// Householder reduction to tridiagonal form (after the EISPACK tred2
// routine). On exit `d` holds the diagonal, `e[1..]` the sub-diagonal and `v`
// the accumulated orthogonal transform.
#[allow(clippy::needless_range_loop)]
fn tridiagonalize(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1]);

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }

            for j in 0..i {
                let f = d[j];
                v[j][i] = f;
                let mut g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal matrix (after EISPACK tql2).
fn tridiagonal_ql(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) -> Result<(), SpectralError> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS {
                    return Err(SpectralError::NoConvergence {
                        index: l,
                        sweeps: MAX_SWEEPS,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        let h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Orients every eigenvector column with a rule that depends only on the
/// multiset of its entries, so relabelling rows never changes the choice.
///
/// Entries are grouped by absolute value (within `tie_tol`), largest first.
/// The first group whose positive and negative members do not balance decides
/// the sign: its majority sign becomes positive. When the largest magnitude is
/// attained once this is simply "largest-magnitude entry positive". When every
/// group balances, the multiset is symmetric under negation and no invariant
/// rule exists: the column is flagged and its lowest-index largest-magnitude
/// entry is made positive.
pub fn fix_signs(mut dec: SpectralDecomposition, tie_tol: f64) -> SpectralDecomposition {
    let n = dec.eigenvectors.nrows();
    for c in 0..dec.eigenvectors.ncols() {
        let col: Vec<f64> = dec.eigenvectors.column(c).iter().copied().collect();
        let (flip, ambiguous) = orient(&col, tie_tol);
        if flip {
            for i in 0..n {
                dec.eigenvectors[(i, c)] = -dec.eigenvectors[(i, c)];
            }
        }
        dec.sign_ambiguous[c] = ambiguous;
    }
    dec
}

/// Returns `(negate, ambiguous)` for one column.
fn orient(col: &[f64], tie_tol: f64) -> (bool, bool) {
    let mut idx: Vec<usize> = (0..col.len()).collect();
    idx.sort_by(|&a, &b| col[b].abs().total_cmp(&col[a].abs()).then(a.cmp(&b)));

    let mut start = 0;
    while start < idx.len() {
        let anchor = col[idx[start]].abs();
        if anchor <= tie_tol {
            break;
        }
        let mut end = start;
        let mut net = 0i64;
        while end < idx.len() && anchor - col[idx[end]].abs() <= tie_tol {
            net += if col[idx[end]] > 0.0 { 1 } else { -1 };
            end += 1;
        }
        if net != 0 {
            return (net < 0, false);
        }
        start = end;
    }

    let Some(&top) = idx.first() else {
        return (false, false);
    };
    if col[top].abs() <= tie_tol {
        return (false, false);
    }
    let anchor = col[top].abs();
    let lowest = idx
        .iter()
        .copied()
        .take_while(|&i| anchor - col[i].abs() <= tie_tol)
        .min()
        .unwrap_or(top);
    (col[lowest] < 0.0, true)
}

/// Symmetric Gram matrix `XᵀX`, summed in a fixed order.
pub(crate) fn gram(x: &DMatrix<f64>) -> DMatrix<f64> {
    let k = x.ncols();
    let mut g = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let s = x
                .column(i)
                .iter()
                .zip(x.column(j).iter())
                .map(|(a, b)| a * b)
                .sum::<f64>();
            g[(i, j)] = s;
            g[(j, i)] = s;
        }
    }
    g
}

/// Subtracts each column's mean.
pub fn center_columns(x: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>) {
    let rows = x.nrows() as f64;
    let means: Vec<f64> = x
        .column_iter()
        .map(|c| c.iter().sum::<f64>() / rows)
        .collect();
    let centered = DMatrix::from_fn(x.nrows(), x.ncols(), |i, j| x[(i, j)] - means[j]);
    (centered, means)
}

/// Relative eigenvalue level below which a Gram eigenvalue counts as zero.
pub const RANK_TOL: f64 = 1e-12;

// Rounding noise of order eps·λ_max would otherwise surface as a singular
// value of order sqrt(eps).
fn singular_value(lambda: f64, lambda_max: f64) -> f64 {
    if lambda <= RANK_TOL * lambda_max {
        0.0
    } else {
        lambda.sqrt()
    }
}

/// Result of [`pca_project`] with the pieces needed to invert it.
#[derive(Debug, Clone)]
pub struct Projection {
    pub encoding: Encoding,
    /// `k × m` retained principal axes.
    pub axes: DMatrix<f64>,
    /// Column means that were subtracted (zeros for `Centering::None`).
    pub means: Vec<f64>,
    /// Full eigenvalue list of `XcᵀXc`, non-increasing.
    pub eigenvalues: Vec<f64>,
}

/// Projects the rows of `x` (`n × k`) onto its `m` leading principal axes.
pub fn pca_project(
    x: &DMatrix<f64>,
    m: usize,
    opts: &PcaOptions,
) -> Result<Encoding, SpectralError> {
    pca_fit(x, m, opts).map(|p| p.encoding)
}

/// Like [`pca_project`] but also returns the axes and means.
pub fn pca_fit(x: &DMatrix<f64>, m: usize, opts: &PcaOptions) -> Result<Projection, SpectralError> {
    let (n, k) = x.shape();
    let max = n.min(k);
    if m == 0 || m > max {
        return Err(SpectralError::Dimension { m, max });
    }
    let (xc, means) = match opts.centering {
        Centering::ColumnMean => center_columns(x),
        Centering::None => (x.clone(), vec![0.0; k]),
    };
    let dec = fix_signs(sym_eigendecomp(&gram(&xc))?, opts.tie_tol);
    let lambda = &dec.eigenvalues;
    let repeated = (0..m).any(|j| j + 1 < k && lambda[j] - lambda[j + 1] < opts.gap_tol);
    let axes = dec.eigenvectors.columns(0, m).into_owned();
    let values = &xc * &axes;
    let encoding = Encoding {
        values,
        spectrum: lambda[..m]
            .iter()
            .map(|&l| singular_value(l, lambda[0]))
            .collect(),
        repeated_spectrum: repeated,
        sign_ambiguous: dec.sign_ambiguous[..m].to_vec(),
    };
    Ok(Projection {
        encoding,
        axes,
        means,
        eigenvalues: dec.eigenvalues,
    })
}

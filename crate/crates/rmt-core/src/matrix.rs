//! Data matrices (channels x samples) and their sample covariance.

use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Result, RmtError};

/// An N x T real matrix: N channels (rows) over T samples (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    inner: DMatrix<f64>,
}

impl DataMatrix {
    /// Build from row slices; every row must have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(RmtError::InvalidShape("need at least one row".into()));
        }
        let t = rows[0].len();
        if t == 0 {
            return Err(RmtError::InvalidShape("need at least one column".into()));
        }
        if rows.iter().any(|r| r.len() != t) {
            return Err(RmtError::InvalidShape("ragged rows".into()));
        }
        let inner = DMatrix::from_fn(n, t, |i, j| rows[i][j]);
        Self::from_dmatrix(inner)
    }

    /// Wrap an existing matrix, checking that all entries are finite.
    pub fn from_dmatrix(inner: DMatrix<f64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(RmtError::InvalidShape("empty matrix".into()));
        }
        for j in 0..inner.ncols() {
            for i in 0..inner.nrows() {
                if !inner[(i, j)].is_finite() {
                    return Err(RmtError::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(Self { inner })
    }

    pub fn n_channels(&self) -> usize {
        self.inner.nrows()
    }

    pub fn n_samples(&self) -> usize {
        self.inner.ncols()
    }

    /// Aspect ratio c = N / T.
    pub fn aspect_ratio(&self) -> f64 {
        self.n_channels() as f64 / self.n_samples() as f64
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.inner[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.inner
    }

    /// Center and scale each row to mean 0 and population standard deviation 1.
    ///
    /// Rows with population std <= 1e-12 are rejected (the affected row index
    /// is carried in the error so callers can name the channel).
    pub fn standardize_rows(&self) -> Result<DataMatrix> {
        let (n, t) = (self.n_channels(), self.n_samples());
        let mut out = self.inner.clone();
        for i in 0..n {
            let mut mean = 0.0;
            for j in 0..t {
                mean += out[(i, j)];
            }
            mean /= t as f64;
            let mut var = 0.0;
            for j in 0..t {
                let d = out[(i, j)] - mean;
                var += d * d;
            }
            let std = (var / t as f64).sqrt();
            if std <= 1e-12 {
                return Err(RmtError::ZeroVarianceRow { row: i, std });
            }
            for j in 0..t {
                out[(i, j)] = (out[(i, j)] - mean) / std;
            }
        }
        Ok(DataMatrix { inner: out })
    }
}

/// Real symmetric sample covariance M = (1/N) Gamma Gamma^T.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    inner: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Wrap a square matrix, enforcing symmetry within 1e-12 relative.
    pub fn from_dmatrix(inner: DMatrix<f64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() || inner.nrows() == 0 {
            return Err(RmtError::InvalidShape(format!(
                "covariance must be square and non-empty, got {}x{}",
                inner.nrows(),
                inner.ncols()
            )));
        }
        let scale = inner.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
        for i in 0..inner.nrows() {
            for j in (i + 1)..inner.ncols() {
                if (inner[(i, j)] - inner[(j, i)]).abs() > 1e-12 * scale {
                    return Err(RmtError::InvalidShape(format!(
                        "asymmetric at ({i}, {j}): {} vs {}",
                        inner[(i, j)],
                        inner[(j, i)]
                    )));
                }
            }
        }
        Ok(Self { inner })
    }

    pub fn order(&self) -> usize {
        self.inner.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.inner[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.inner.trace()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.inner
    }
}

/// M = (1/N) Gamma Gamma^T. Exact for real inputs; the product is symmetric
/// by construction.
pub fn covariance(m: &DataMatrix) -> CovarianceMatrix {
    let n = m.n_channels() as f64;
    let product = m.as_dmatrix() * m.as_dmatrix().transpose();
    CovarianceMatrix { inner: product / n }
}

/// Entry distributions for synthetic test matrices; all are zero-mean,
/// unit-variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryDistribution {
    Gaussian,
    /// +1 or -1 with equal probability; excess kurtosis -2.
    Rademacher,
    /// Uniform on [-sqrt(3), sqrt(3)]; excess kurtosis -1.2.
    Uniform,
}

/// Deterministic i.i.d. matrix generator (row-major fill order, ChaCha8 stream).
pub fn gen_test_matrix(
    n: usize,
    t: usize,
    dist: EntryDistribution,
    seed: u64,
) -> Result<DataMatrix> {
    if n == 0 || t == 0 {
        return Err(RmtError::InvalidShape(format!("degenerate shape {n}x{t}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inner = DMatrix::zeros(n, t);
    let half_width = 3.0f64.sqrt();
    for i in 0..n {
        for j in 0..t {
            inner[(i, j)] = match dist {
                EntryDistribution::Gaussian => StandardNormal.sample(&mut rng),
                EntryDistribution::Rademacher => {
                    if rng.random::<bool>() {
                        1.0
                    } else {
                        -1.0
                    }
                }
                EntryDistribution::Uniform => half_width * (2.0 * rng.random::<f64>() - 1.0),
            };
        }
    }
    Ok(DataMatrix { inner })
}

//! Scoring LES values against the CLT null model or an empirical reference.

use rmt_core::{les_mean, les_variance, SpectralNull, TestFunction};

use crate::error::{DetectorError, Result};
use crate::les_series::LesSeries;

/// How window scores are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoringMethod {
    /// CLT null model: (tau - E tau) / sigma(tau).
    NullZscore,
    /// Empirical reference block: |tau - mean_ref| / std_ref.
    ReferenceWindow,
}

impl std::fmt::Display for ScoringMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScoringMethod::NullZscore => "null-zscore",
            ScoringMethod::ReferenceWindow => "reference-window",
        })
    }
}

impl std::str::FromStr for ScoringMethod {
    type Err = DetectorError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "null-zscore" => Ok(ScoringMethod::NullZscore),
            "reference-window" => Ok(ScoringMethod::ReferenceWindow),
            other => Err(DetectorError::InvalidConfig(format!(
                "unknown scoring method '{other}' (expected null-zscore or reference-window)"
            ))),
        }
    }
}

/// Standardized score of a single tau under the Gaussian null:
/// (tau - E tau) / sigma(tau). Strictly monotone in tau.
pub fn zscore_null(tau: f64, phi: &TestFunction, n: usize, c: f64, kappa4: f64) -> Result<f64> {
    let null = SpectralNull::new(c, kappa4)?;
    let mean = les_mean(phi, n, c)?;
    let var = les_variance(phi, &null)?;
    if var <= 0.0 {
        return Err(DetectorError::Spectral(rmt_core::RmtError::Numeric(
            format!("null variance {var} is not positive; score undefined"),
        )));
    }
    Ok((tau - mean) / var.sqrt())
}

/// Mean and sample standard deviation of the reference windows
/// `[range.0, range.1)` of a LES trace.
pub fn reference_stats(series: &LesSeries, range: (usize, usize)) -> Result<(f64, f64)> {
    let (start, end) = range;
    if start >= end || end > series.len() {
        return Err(DetectorError::BadReference(format!(
            "range [{start}, {end}) invalid for {} windows",
            series.len()
        )));
    }
    let count = end - start;
    if count < 8 {
        return Err(DetectorError::BadReference(format!(
            "need at least 8 reference windows, got {count}"
        )));
    }
    let slice = &series.tau[start..end];
    let mean = slice.iter().sum::<f64>() / count as f64;
    let var = slice.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (count - 1) as f64;
    let std = var.sqrt();
    if std <= 0.0 {
        return Err(DetectorError::BadReference(
            "zero dispersion across the reference windows".into(),
        ));
    }
    Ok((mean, std))
}

/// Per-window score |tau - mean_ref| / std_ref against the windows in
/// `reference` (half-open index range).
pub fn reference_score(series: &LesSeries, reference: (usize, usize)) -> Result<Vec<f64>> {
    let (mean, std) = reference_stats(series, reference)?;
    Ok(series.tau.iter().map(|t| (t - mean).abs() / std).collect())
}

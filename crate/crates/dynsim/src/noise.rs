//! Seeded additive Gaussian noise at a per-channel target SNR.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{DynError, Result};
use crate::types::TimeSeries;

/// Add zero-mean Gaussian noise so each channel reaches `snr_db` (signal
/// power measured as the channel's population variance).
///
/// `snr_db = f64::INFINITY` is the no-noise sentinel and returns the input
/// unchanged. The noise stream is a single ChaCha8 sequence consumed channel
/// by channel, so results are deterministic per seed.
pub fn add_noise(series: &TimeSeries, snr_db: f64, seed: u64) -> Result<TimeSeries> {
    if snr_db == f64::INFINITY {
        return Ok(series.clone());
    }
    if !snr_db.is_finite() {
        return Err(DynError::InvalidConfig(format!(
            "snr_db must be finite, got {snr_db}"
        )));
    }
    let mut out = series.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = series.len();
    for (ch, data) in out.data.iter_mut().enumerate() {
        let mean: f64 = data.iter().sum::<f64>() / n.max(1) as f64;
        let power: f64 =
            data.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / n.max(1) as f64;
        if power <= 0.0 {
            return Err(DynError::ZeroPowerChannel {
                id: series.channels[ch].id,
            });
        }
        let sigma = (power * 10f64.powf(-snr_db / 10.0)).sqrt();
        for v in data.iter_mut() {
            let z: f64 = StandardNormal.sample(&mut rng);
            *v += sigma * z;
        }
    }
    Ok(out)
}

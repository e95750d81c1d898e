//! Average power spectrum in dB.

use super::{stft, StftConfig, Waveform};
use crate::error::Result;

/// Spectral floor applied before any log so silence maps to -120 dB
/// instead of -inf.
pub const SPECTRAL_FLOOR: f64 = 1e-12;

/// Per-bin 10 log10(mean over frames of |STFT|^2), floored at 1e-12.
pub fn power_spectrum_db(w: &Waveform, cfg: &StftConfig) -> Result<Vec<f64>> {
    let s = stft(w, cfg, true)?;
    let mut acc = vec![0.0f64; s.n_freq];
    for t in 0..s.n_frames {
        for f in 0..s.n_freq {
            acc[f] += s.at(t, f).norm_sqr();
        }
    }
    let n = s.n_frames as f64;
    Ok(acc
        .into_iter()
        .map(|p| 10.0 * (p / n).max(SPECTRAL_FLOOR).log10())
        .collect())
}

/// Bin index -> center frequency in Hz for a given config and rate.
pub fn bin_hz(cfg: &StftConfig, sample_rate_hz: u32, bin: usize) -> f64 {
    bin as f64 * sample_rate_hz as f64 / cfg.fft_len as f64
}

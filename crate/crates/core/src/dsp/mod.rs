//! Deterministic signal primitives shared by every other module: windows,
//! STFT/iSTFT, convolution, resampling, power spectra, and WAV I/O.
//!
//! All operations are pure functions of their inputs; values are immutable
//! once constructed and safe to share across threads.

mod conv;
mod resample;
mod spectrum;
mod stft;
mod wav;
mod window;

pub use conv::{convolve, ConvMode};
pub use resample::resample;
pub use spectrum::power_spectrum_db;
pub use stft::{istft, stft, ComplexSpectrogram};
pub use wav::{read_wav, write_wav, WavEncoding};
pub use window::hann_window;

use crate::error::{AseError, Result};

/// A mono sample sequence with its sample rate. Amplitudes are
/// dimensionless with nominal range [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    pub samples: Vec<f64>,
    pub sample_rate_hz: u32,
}

impl Waveform {
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Result<Self> {
        if sample_rate_hz == 0 {
            return Err(AseError::invalid("sample_rate_hz must be > 0"));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(AseError::invalid("waveform contains non-finite samples"));
        }
        Ok(Waveform {
            samples,
            sample_rate_hz,
        })
    }

    pub fn zeros(len: usize, sample_rate_hz: u32) -> Self {
        Waveform {
            samples: vec![0.0; len],
            sample_rate_hz,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz as f64
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s * s).sum()
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, s| m.max(s.abs()))
    }

    /// Peak-normalize to the given amplitude. Silence is returned unchanged.
    pub fn normalized_to(&self, peak: f64) -> Waveform {
        let p = self.peak();
        if p <= 0.0 {
            return self.clone();
        }
        let g = peak / p;
        Waveform {
            samples: self.samples.iter().map(|s| s * g).collect(),
            sample_rate_hz: self.sample_rate_hz,
        }
    }
}

/// Analysis parameters for the STFT. `n_freq()` is the number of one-sided
/// frequency bins, `fft_len/2 + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StftConfig {
    pub win_len: usize,
    pub hop_len: usize,
    pub fft_len: usize,
    pub window_kind: WindowKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Hann,
}

impl StftConfig {
    pub fn new(win_len: usize, hop_len: usize, fft_len: usize) -> Result<Self> {
        if hop_len == 0 || hop_len > win_len || win_len > fft_len {
            return Err(AseError::invalid(format!(
                "stft config requires 0 < hop ({hop_len}) <= win ({win_len}) <= fft ({fft_len})"
            )));
        }
        Ok(StftConfig {
            win_len,
            hop_len,
            fft_len,
            window_kind: WindowKind::Hann,
        })
    }

    /// The 400/100/400 analysis used throughout: 25 ms Hann window, 6.25 ms
    /// hop at 16 kHz, 201 one-sided bins.
    pub fn speech_default() -> Self {
        StftConfig::new(400, 100, 400).expect("default stft config")
    }

    pub fn n_freq(&self) -> usize {
        self.fft_len / 2 + 1
    }

    pub fn window(&self) -> Vec<f64> {
        match self.window_kind {
            WindowKind::Hann => hann_window(self.win_len).expect("win_len >= 2"),
        }
    }
}

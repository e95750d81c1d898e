//! Linear convolution, direct below 64-tap kernels and FFT-based above.
//! The two paths are required to agree (see tests), so the switch point is
//! purely a performance matter.

use crate::error::{AseError, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvMode {
    /// Every output sample, length `len(x) + len(h) - 1`.
    Full,
    /// The leading `len(x)` samples of the full result (causal filtering).
    SameLeading,
}

const FFT_KERNEL_THRESHOLD: usize = 64;

/// Linear convolution of `x` with `h`.
pub fn convolve(x: &[f64], h: &[f64], mode: ConvMode) -> Result<Vec<f64>> {
    if x.is_empty() || h.is_empty() {
        return Err(AseError::invalid("convolve requires non-empty inputs"));
    }
    let full = if h.len().min(x.len()) > FFT_KERNEL_THRESHOLD {
        convolve_fft(x, h)
    } else {
        convolve_direct(x, h)
    };
    Ok(match mode {
        ConvMode::Full => full,
        ConvMode::SameLeading => {
            let mut out = full;
            out.truncate(x.len());
            out
        }
    })
}

pub(crate) fn convolve_direct(x: &[f64], h: &[f64]) -> Vec<f64> {
    let n = x.len() + h.len() - 1;
    let mut out = vec![0.0; n];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0.0 {
            continue;
        }
        for (j, &hj) in h.iter().enumerate() {
            out[i + j] += xi * hj;
        }
    }
    out
}

pub(crate) fn convolve_fft(x: &[f64], h: &[f64]) -> Vec<f64> {
    let n = x.len() + h.len() - 1;
    let size = n.next_power_of_two();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(size);
    let ifft = planner.plan_fft_inverse(size);

    let mut a = vec![Complex64::new(0.0, 0.0); size];
    let mut b = vec![Complex64::new(0.0, 0.0); size];
    for (i, &v) in x.iter().enumerate() {
        a[i].re = v;
    }
    for (i, &v) in h.iter().enumerate() {
        b[i].re = v;
    }
    fft.process(&mut a);
    fft.process(&mut b);
    for i in 0..size {
        a[i] *= b[i];
    }
    ifft.process(&mut a);
    let scale = 1.0 / size as f64;
    a[..n].iter().map(|c| c.re * scale).collect()
}

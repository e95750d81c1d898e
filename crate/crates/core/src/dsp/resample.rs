//! Rational-ratio resampling with a windowed-sinc interpolation kernel.

use super::Waveform;
use crate::error::{AseError, Result};
use std::f64::consts::PI;

/// Half-width of the interpolation kernel in input samples.
const KERNEL_HALF_WIDTH: usize = 32;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

fn blackman(u: f64) -> f64 {
    // u in [-1, 1]
    let t = PI * (u + 1.0);
    0.42 - 0.5 * (t).cos() + 0.08 * (2.0 * t).cos()
}

/// Polyphase-style rational resampling. Output length is
/// `round(len * target / source)`; per-sample kernel weights are
/// renormalized so DC is preserved exactly, including at the edges.
pub fn resample(w: &Waveform, target_hz: u32) -> Result<Waveform> {
    if target_hz == 0 {
        return Err(AseError::invalid("target_hz must be > 0"));
    }
    if target_hz == w.sample_rate_hz {
        return Ok(w.clone());
    }
    if w.is_empty() {
        return Ok(Waveform::zeros(0, target_hz));
    }

    let g = gcd(target_hz as u64, w.sample_rate_hz as u64);
    let up = (target_hz as u64 / g) as f64;
    let down = (w.sample_rate_hz as u64 / g) as f64;
    let out_len = ((w.len() as f64 * target_hz as f64 / w.sample_rate_hz as f64).round()) as usize;

    // Anti-aliasing cutoff relative to the input Nyquist, with a little
    // rolloff margin.
    let cutoff = 0.92 * (up / down).min(1.0);
    let k = KERNEL_HALF_WIDTH as isize;

    let x = &w.samples;
    let mut out = Vec::with_capacity(out_len);
    for j in 0..out_len {
        let t = j as f64 * down / up;
        let i0 = t.floor() as isize;
        let mut acc = 0.0;
        let mut wsum = 0.0;
        for m in (i0 - k + 1)..=(i0 + k) {
            if m < 0 || m as usize >= x.len() {
                continue;
            }
            let u = (m as f64 - t) / k as f64;
            let weight = cutoff * sinc(cutoff * (m as f64 - t)) * blackman(u);
            wsum += weight;
            acc += weight * x[m as usize];
        }
        out.push(if wsum.abs() > 1e-12 { acc / wsum } else { 0.0 });
    }

    Ok(Waveform {
        samples: out,
        sample_rate_hz: target_hz,
    })
}

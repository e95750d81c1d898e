//! Short-time Fourier transform and weighted overlap-add inverse.

use super::{StftConfig, Waveform};
use crate::error::{AseError, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

/// One-sided complex spectrogram: `n_frames` x `n_freq` row-major, together
/// with the analysis config that produced it.
#[derive(Debug, Clone)]
pub struct ComplexSpectrogram {
    pub frames: Vec<Complex64>,
    pub n_frames: usize,
    pub n_freq: usize,
    pub config: StftConfig,
    pub center: bool,
}

impl ComplexSpectrogram {
    pub fn at(&self, frame: usize, bin: usize) -> Complex64 {
        self.frames[frame * self.n_freq + bin]
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.frames.iter().map(|c| c.norm()).collect()
    }

    pub fn phases(&self) -> Vec<f64> {
        self.frames.iter().map(|c| c.arg()).collect()
    }

    pub fn scaled(&self, g: f64) -> ComplexSpectrogram {
        ComplexSpectrogram {
            frames: self.frames.iter().map(|c| c * g).collect(),
            ..self.clone()
        }
    }
}

/// Split of the centering pad between the two signal ends.
pub(crate) fn center_pads(cfg: &StftConfig) -> (usize, usize) {
    let total = cfg.win_len - cfg.hop_len;
    let left = total.min(cfg.win_len / 2);
    (left, total - left)
}

fn reflect_pad(x: &[f64], left: usize, right: usize) -> Result<Vec<f64>> {
    if x.len() <= left || x.len() <= right {
        return Err(AseError::invalid(format!(
            "signal of {} samples too short for reflect padding ({left}, {right})",
            x.len()
        )));
    }
    let mut out = Vec::with_capacity(x.len() + left + right);
    for i in 0..left {
        out.push(x[left - i]);
    }
    out.extend_from_slice(x);
    for i in 0..right {
        out.push(x[x.len() - 2 - i]);
    }
    Ok(out)
}

/// Forward STFT. With `center_pad` the signal is reflect-padded by
/// `win - hop` samples so that the frame count is `ceil(len / hop)`;
/// without it the frame count is `floor((len - win) / hop) + 1`.
pub fn stft(w: &Waveform, cfg: &StftConfig, center_pad: bool) -> Result<ComplexSpectrogram> {
    let x = if center_pad {
        let (l, r) = center_pads(cfg);
        reflect_pad(&w.samples, l, r)?
    } else {
        if w.samples.len() < cfg.win_len {
            return Err(AseError::invalid(format!(
                "stft input of {} samples shorter than window {}",
                w.samples.len(),
                cfg.win_len
            )));
        }
        w.samples.clone()
    };
    if x.len() < cfg.win_len {
        return Err(AseError::invalid("stft input too short"));
    }

    let window = cfg.window();
    let n_frames = (x.len() - cfg.win_len) / cfg.hop_len + 1;
    let n_freq = cfg.n_freq();

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(cfg.fft_len);
    let mut frames = Vec::with_capacity(n_frames * n_freq);
    let mut buf = vec![Complex64::new(0.0, 0.0); cfg.fft_len];

    for t in 0..n_frames {
        let start = t * cfg.hop_len;
        for k in 0..cfg.fft_len {
            let v = if k < cfg.win_len {
                x[start + k] * window[k]
            } else {
                0.0
            };
            buf[k] = Complex64::new(v, 0.0);
        }
        fft.process(&mut buf);
        frames.extend_from_slice(&buf[..n_freq]);
    }

    Ok(ComplexSpectrogram {
        frames,
        n_frames,
        n_freq,
        config: *cfg,
        center: center_pad,
    })
}

/// Inverse STFT by weighted overlap-add: the synthesis window equals the
/// analysis window and the result is normalized by the per-sample sum of
/// squared windows. Positions with negligible window coverage come out as
/// zero.
pub fn istft(spec: &ComplexSpectrogram, out_len: usize) -> Result<Waveform> {
    let cfg = &spec.config;
    let window = cfg.window();
    let n = cfg.fft_len;
    let full_len = (spec.n_frames.max(1) - 1) * cfg.hop_len + cfg.win_len;
    let start = if spec.center { center_pads(cfg).0 } else { 0 };
    if spec.n_frames == 0 || start + out_len > full_len {
        return Err(AseError::invalid(format!(
            "out_len {out_len} inconsistent with {} frames",
            spec.n_frames
        )));
    }

    let mut planner = FftPlanner::new();
    let ifft = planner.plan_fft_inverse(n);
    let mut acc = vec![0.0f64; full_len];
    let mut wsum = vec![0.0f64; full_len];
    let mut buf = vec![Complex64::new(0.0, 0.0); n];

    for t in 0..spec.n_frames {
        let row = &spec.frames[t * spec.n_freq..(t + 1) * spec.n_freq];
        for f in 0..n {
            buf[f] = if f < spec.n_freq {
                row[f]
            } else {
                row[n - f].conj()
            };
        }
        ifft.process(&mut buf);
        let base = t * cfg.hop_len;
        for k in 0..cfg.win_len {
            acc[base + k] += buf[k].re / n as f64 * window[k];
            wsum[base + k] += window[k] * window[k];
        }
    }

    let samples = (0..out_len)
        .map(|i| {
            let n = start + i;
            if wsum[n] > 1e-12 {
                acc[n] / wsum[n]
            } else {
                0.0
            }
        })
        .collect();
    Ok(Waveform {
        samples,
        sample_rate_hz: 1, // caller-owned; see istft_at
    })
}

/// `istft` with the output sample rate attached.
pub fn istft_at(spec: &ComplexSpectrogram, out_len: usize, sample_rate_hz: u32) -> Result<Waveform> {
    let mut w = istft(spec, out_len)?;
    w.sample_rate_hz = sample_rate_hz;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_wave(len: usize, seed: u64) -> Waveform {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Waveform::new((0..len).map(|_| rng.gen_range(-1.0..1.0)).collect(), 16000).unwrap()
    }

    #[test]
    fn impulse_first_frame_is_zero() {
        // Periodic Hann has w[0] = 0, so an impulse at sample 0 dies.
        let mut x = vec![0.0; 16];
        x[0] = 1.0;
        let w = Waveform::new(x, 16000).unwrap();
        let cfg = StftConfig::new(4, 1, 4).unwrap();
        let s = stft(&w, &cfg, false).unwrap();
        for f in 0..s.n_freq {
            assert!(s.at(0, f).norm() < 1e-15);
        }
    }

    #[test]
    fn dc_concentrates_in_bin_zero() {
        let w = Waveform::new(vec![1.0; 2000], 16000).unwrap();
        let cfg = StftConfig::speech_default();
        let s = stft(&w, &cfg, false).unwrap();
        let wsum: f64 = cfg.window().iter().sum();
        for t in 0..s.n_frames {
            assert!((s.at(t, 0).re - wsum).abs() < 1e-9);
            assert!(s.at(t, 0).im.abs() < 1e-9);
        }
    }

    #[test]
    fn frame_count_formula() {
        let w = rand_wave(1600, 7);
        let cfg = StftConfig::speech_default();
        let s = stft(&w, &cfg, false).unwrap();
        assert_eq!(s.n_frames, 13);
        assert_eq!(s.n_freq, 201);
        let sc = stft(&w, &cfg, true).unwrap();
        assert_eq!(sc.n_frames, 16); // ceil(1600/100)
    }

    #[test]
    fn cola_roundtrip_no_center() {
        let w = rand_wave(4000, 3);
        let cfg = StftConfig::speech_default(); // hop = win/4
        let s = stft(&w, &cfg, false).unwrap();
        let full = (s.n_frames - 1) * cfg.hop_len + cfg.win_len;
        let y = istft(&s, full).unwrap();
        // Sample 0 carries zero window weight; every other sample is exact.
        for n in 1..full {
            assert!(
                (y.samples[n] - w.samples[n]).abs() < 1e-6,
                "sample {n}: {} vs {}",
                y.samples[n],
                w.samples[n]
            );
        }
    }

    #[test]
    fn cola_roundtrip_center() {
        let w = rand_wave(3210, 11);
        let cfg = StftConfig::speech_default();
        let s = stft(&w, &cfg, true).unwrap();
        let y = istft(&s, w.len()).unwrap();
        for n in 0..w.len() {
            assert!((y.samples[n] - w.samples[n]).abs() < 1e-6, "sample {n}");
        }
    }

    #[test]
    fn zero_spectrogram_gives_zero_waveform() {
        let w = rand_wave(1600, 5);
        let cfg = StftConfig::speech_default();
        let mut s = stft(&w, &cfg, true).unwrap();
        s.frames.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
        let y = istft(&s, w.len()).unwrap();
        assert!(y.samples.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn istft_is_linear_in_the_spectrogram() {
        let w = rand_wave(1600, 9);
        let cfg = StftConfig::speech_default();
        let s = stft(&w, &cfg, true).unwrap();
        let y1 = istft(&s, w.len()).unwrap();
        let y2 = istft(&s.scaled(2.0), w.len()).unwrap();
        for n in 0..w.len() {
            assert!((y2.samples[n] - 2.0 * y1.samples[n]).abs() < 1e-9);
        }
    }

    #[test]
    fn stft_is_linear() {
        let a = rand_wave(1600, 1);
        let b = rand_wave(1600, 2);
        let cfg = StftConfig::speech_default();
        let mixed = Waveform::new(
            a.samples
                .iter()
                .zip(&b.samples)
                .map(|(x, y)| 0.7 * x - 1.3 * y)
                .collect(),
            16000,
        )
        .unwrap();
        let sa = stft(&a, &cfg, false).unwrap();
        let sb = stft(&b, &cfg, false).unwrap();
        let sm = stft(&mixed, &cfg, false).unwrap();
        for i in 0..sm.frames.len() {
            let want = 0.7 * sa.frames[i] - 1.3 * sb.frames[i];
            assert!((sm.frames[i] - want).norm() < 1e-9);
        }
    }

    #[test]
    fn parseval_per_frame() {
        // Against the full two-sided transform: sum |x_win|^2 = (1/N) sum |X|^2.
        let w = rand_wave(800, 21);
        let cfg = StftConfig::speech_default();
        let s = stft(&w, &cfg, false).unwrap();
        let window = cfg.window();
        for t in 0..s.n_frames {
            let time_e: f64 = (0..cfg.win_len)
                .map(|k| {
                    let v = w.samples[t * cfg.hop_len + k] * window[k];
                    v * v
                })
                .sum();
            // Rebuild two-sided energy from the one-sided bins.
            let mut freq_e = 0.0;
            for f in 0..cfg.fft_len {
                let c = if f < s.n_freq {
                    s.at(t, f)
                } else {
                    s.at(t, cfg.fft_len - f).conj()
                };
                freq_e += c.norm_sqr();
            }
            freq_e /= cfg.fft_len as f64;
            assert!(
                (time_e - freq_e).abs() <= 1e-8 * time_e.max(1e-12),
                "frame {t}: {time_e} vs {freq_e}"
            );
        }
    }

    #[test]
    fn too_short_input_rejected() {
        let w = rand_wave(100, 1);
        let cfg = StftConfig::speech_default();
        assert!(stft(&w, &cfg, false).is_err());
    }
}

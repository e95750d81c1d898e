//! Seed-deterministic synthetic signals: pseudo-speech, pink noise, and
//! babble. Desk-scale stand-ins for recorded corpora.

use crate::dsp::Waveform;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Two-pole resonator used as a formant filter.
struct Resonator {
    a1: f64,
    a2: f64,
    gain: f64,
    y1: f64,
    y2: f64,
}

impl Resonator {
    fn new(freq_hz: f64, bw_hz: f64, fs: f64) -> Self {
        let r = (-PI * bw_hz / fs).exp();
        let theta = 2.0 * PI * freq_hz / fs;
        Resonator {
            a1: 2.0 * r * theta.cos(),
            a2: -r * r,
            gain: (1.0 - r * r) * theta.sin().max(0.1),
            y1: 0.0,
            y2: 0.0,
        }
    }

    fn step(&mut self, x: f64) -> f64 {
        let y = self.gain * x + self.a1 * self.y1 + self.a2 * self.y2;
        self.y2 = self.y1;
        self.y1 = y;
        y
    }
}

/// Deterministic pseudo-speech: a pitch-modulated harmonic source shaped by
/// drifting formant resonators and gated into syllable-like bursts, peak
/// normalized to 0.95.
pub fn synth_speechlike(seed: u64, len: usize, rate: u32) -> Waveform {
    let fs = rate as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![0.0f64; len];

    let mut pos = 0usize;
    // Small lead-in gap so utterances do not all start identically.
    pos += (rng.gen_range(0.01..0.05) * fs) as usize;

    let mut f0 = rng.gen_range(90.0..220.0);
    while pos < len {
        let syllable = (rng.gen_range(0.12..0.32) * fs) as usize;
        let gap = (rng.gen_range(0.04..0.15) * fs) as usize;
        let end = (pos + syllable).min(len);

        // Per-syllable articulation: formant targets and a pitch glide.
        let n_formants = rng.gen_range(2..=4usize);
        let centers = [
            rng.gen_range(300.0..900.0),
            rng.gen_range(900.0..2400.0),
            rng.gen_range(2400.0..3400.0),
            rng.gen_range(3200.0..3800.0),
        ];
        let gains = [1.0, 0.63, 0.32, 0.18];
        let mut formants: Vec<Resonator> = (0..n_formants)
            .map(|i| Resonator::new(centers[i], rng.gen_range(80.0..160.0), fs))
            .collect();
        let f0_target = (f0 + rng.gen_range(-40.0..40.0)).clamp(90.0, 220.0);
        let glide = (f0_target - f0) / syllable.max(1) as f64;
        let n_harm = (fs * 0.45 / 220.0) as usize; // fixed count keeps phases continuous
        let attack = (0.02 * fs) as usize;
        let release = (0.04 * fs) as usize;

        let mut phase = 0.0f64;
        for (i, n) in (pos..end).enumerate() {
            // Slow random walk plus glide keeps the pitch contour natural.
            f0 = (f0 + glide + rng.gen_range(-0.03..0.03)).clamp(90.0, 220.0);
            phase += 2.0 * PI * f0 / fs;
            let mut src = 0.0;
            for h in 1..=n_harm {
                let hf = h as f64;
                if hf * f0 < fs * 0.47 {
                    src += (hf * phase).sin() / hf;
                }
            }
            src += 0.02 * rng.gen_range(-1.0..1.0); // aspiration

            let mut v = 0.0;
            for (fi, f) in formants.iter_mut().enumerate() {
                v += gains[fi] * f.step(src);
            }

            let env_in = if i < attack {
                0.5 * (1.0 - (PI * i as f64 / attack as f64).cos())
            } else {
                1.0
            };
            let remain = end - n;
            let env_out = if remain < release {
                0.5 * (1.0 - (PI * remain as f64 / release as f64).cos())
            } else {
                1.0
            };
            out[n] = v * env_in * env_out;
        }
        pos = end + gap;
    }

    Waveform {
        samples: out,
        sample_rate_hz: rate,
    }
    .normalized_to(0.95)
}

/// Pink (1/f) noise via the Kellet pole approximation, peak normalized
/// to 0.95.
pub fn pink_noise(seed: u64, len: usize, rate: u32) -> Waveform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let (mut b0, mut b1, mut b2, mut b3, mut b4, mut b5, mut b6) =
        (0.0f64, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    let samples: Vec<f64> = (0..len)
        .map(|_| {
            let w: f64 = rng.gen_range(-1.0..1.0);
            b0 = 0.99886 * b0 + w * 0.0555179;
            b1 = 0.99332 * b1 + w * 0.0750759;
            b2 = 0.96900 * b2 + w * 0.1538520;
            b3 = 0.86650 * b3 + w * 0.3104856;
            b4 = 0.55000 * b4 + w * 0.5329522;
            b5 = -0.7616 * b5 - w * 0.0168980;
            let pink = b0 + b1 + b2 + b3 + b4 + b5 + b6 + w * 0.5362;
            b6 = w * 0.115926;
            pink * 0.11
        })
        .collect();
    Waveform {
        samples,
        sample_rate_hz: rate,
    }
    .normalized_to(0.95)
}

/// Babble built from overlapping pseudo-speech talkers, peak normalized
/// to 0.95.
pub fn babble_noise(seed: u64, len: usize, rate: u32) -> Waveform {
    let talkers = 6;
    let mut acc = vec![0.0f64; len];
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0xD134_2543_DE82_EF95));
    for t in 0..talkers {
        let voice = synth_speechlike(seed.wrapping_add(1000 + t), len + 4000, rate);
        let offset = rng.gen_range(0..3000usize);
        let gain = rng.gen_range(0.5..1.0);
        for n in 0..len {
            acc[n] += gain * voice.samples[n + offset];
        }
    }
    Waveform {
        samples: acc,
        sample_rate_hz: rate,
    }
    .normalized_to(0.95)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp::{power_spectrum_db, spectrum::bin_hz, StftConfig};

    #[test]
    fn deterministic_given_seed() {
        let a = synth_speechlike(7, 8000, 16000);
        let b = synth_speechlike(7, 8000, 16000);
        assert_eq!(a.samples, b.samples);
        let c = synth_speechlike(8, 8000, 16000);
        assert_ne!(a.samples, c.samples);
    }

    #[test]
    fn peak_is_exactly_normalized() {
        for seed in [1, 2, 3] {
            let w = synth_speechlike(seed, 16000, 16000);
            assert!((w.peak() - 0.95).abs() < 1e-6);
        }
    }

    #[test]
    fn most_energy_below_4khz() {
        let w = synth_speechlike(11, 32000, 16000);
        let cfg = StftConfig::speech_default();
        let p = power_spectrum_db(&w, &cfg).unwrap();
        let (mut low, mut total) = (0.0, 0.0);
        for (bin, db) in p.iter().enumerate() {
            let e = 10f64.powf(db / 10.0);
            total += e;
            if bin_hz(&cfg, 16000, bin) < 4000.0 {
                low += e;
            }
        }
        assert!(low / total >= 0.6, "low-band fraction {}", low / total);
    }

    #[test]
    fn noise_generators_are_deterministic_and_normalized() {
        let p1 = pink_noise(3, 4000, 16000);
        let p2 = pink_noise(3, 4000, 16000);
        assert_eq!(p1.samples, p2.samples);
        assert!((p1.peak() - 0.95).abs() < 1e-9);

        let b1 = babble_noise(3, 4000, 16000);
        let b2 = babble_noise(3, 4000, 16000);
        assert_eq!(b1.samples, b2.samples);
        assert!((b1.peak() - 0.95).abs() < 1e-9);
    }

    #[test]
    fn pink_noise_slopes_down_with_frequency() {
        let w = pink_noise(5, 64000, 16000);
        let cfg = StftConfig::speech_default();
        let p = power_spectrum_db(&w, &cfg).unwrap();
        // Average of low bins (200-800 Hz) should exceed high (4-7 kHz).
        let avg = |lo: f64, hi: f64| {
            let vals: Vec<f64> = p
                .iter()
                .enumerate()
                .filter(|(b, _)| {
                    let hz = bin_hz(&cfg, 16000, *b);
                    hz >= lo && hz < hi
                })
                .map(|(_, v)| *v)
                .collect();
            vals.iter().sum::<f64>() / vals.len() as f64
        };
        assert!(avg(200.0, 800.0) > avg(4000.0, 7000.0) + 6.0);
    }
}

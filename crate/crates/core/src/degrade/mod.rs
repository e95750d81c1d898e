//! Degraded-speech task generation: additive noise at a target SNR,
//! reverberation, and clipping, with the task-specific clean target.

mod synth;

pub use synth::{babble_noise, pink_noise, synth_speechlike};

use crate::acoustics::{propagate, AcousticScene, Rir};
use crate::dsp::{convolve, ConvMode, Waveform};
use crate::error::{AseError, Result};

/// Which noise generator feeds the additive-noise task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    Pink,
    Babble,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DegradationKind {
    Noise { snr_db: f64, noise: NoiseKind },
    Reverb { rir: Rir },
    Clip { eta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegradationSpec {
    pub kind: DegradationKind,
    pub seed: u64,
}

impl DegradationSpec {
    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            DegradationKind::Noise { snr_db, .. } => {
                if !snr_db.is_finite() {
                    return Err(AseError::invalid("snr_db must be finite"));
                }
            }
            DegradationKind::Clip { eta } => {
                if !(*eta > 0.0 && *eta <= 1.0) {
                    return Err(AseError::invalid(format!("eta {eta} outside (0, 1]")));
                }
            }
            DegradationKind::Reverb { rir } => {
                if rir.taps.is_empty() {
                    return Err(AseError::invalid("reverb rir is empty"));
                }
            }
        }
        Ok(())
    }

    pub fn task_name(&self) -> &'static str {
        match self.kind {
            DegradationKind::Noise { .. } => "denoise",
            DegradationKind::Reverb { .. } => "dereverb",
            DegradationKind::Clip { .. } => "declip",
        }
    }
}

/// One training/evaluation item: the degraded reference-mic input and the
/// clean target it should be steered towards.
#[derive(Debug, Clone)]
pub struct TaskSample {
    pub x: Waveform,
    pub c: Waveform,
    pub spec: DegradationSpec,
    pub scene_id: String,
}

/// Mix noise into speech at an exact SNR: returns s + g n with the gain g
/// chosen so that 10 log10(||s||^2 / ||g n||^2) = snr_db.
pub fn mix_at_snr(s: &Waveform, n: &Waveform, snr_db: f64) -> Result<Waveform> {
    if s.len() != n.len() {
        return Err(AseError::invalid(format!(
            "mix_at_snr length mismatch: {} vs {}",
            s.len(),
            n.len()
        )));
    }
    let es = s.energy();
    let en = n.energy();
    if es <= 0.0 || en <= 0.0 {
        return Err(AseError::invalid("mix_at_snr requires non-silent inputs"));
    }
    let g = (es / (en * 10f64.powf(snr_db / 10.0))).sqrt();
    Ok(Waveform {
        samples: s
            .samples
            .iter()
            .zip(&n.samples)
            .map(|(a, b)| a + g * b)
            .collect(),
        sample_rate_hz: s.sample_rate_hz,
    })
}

/// Reverberate speech by causal convolution with a room impulse response.
pub fn apply_reverb(s: &Waveform, r: &Rir) -> Waveform {
    Waveform {
        samples: convolve(&s.samples, &r.taps, ConvMode::SameLeading)
            .expect("non-empty signal and taps"),
        sample_rate_hz: s.sample_rate_hz,
    }
}

/// Hard-clip to [-eta, +eta].
pub fn apply_clip(s: &Waveform, eta: f64) -> Result<Waveform> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(AseError::invalid(format!("eta {eta} outside (0, 1]")));
    }
    Ok(Waveform {
        samples: s.samples.iter().map(|v| v.clamp(-eta, eta)).collect(),
        sample_rate_hz: s.sample_rate_hz,
    })
}

/// Build a task sample from clean speech. The clean target is the speech
/// through the primary path for the noise task, and the original anechoic,
/// unclipped speech for the dereverberation and declipping tasks.
///
/// `reverb_through_primary` additionally routes the reverb-task reference
/// signal through the primary path before the model sees it.
pub fn make_task_sample(
    s: &Waveform,
    spec: &DegradationSpec,
    scene: &AcousticScene,
    rirs: &(Rir, Rir),
    scene_id: &str,
    reverb_through_primary: bool,
) -> Result<TaskSample> {
    spec.validate()?;
    let (x, c) = match &spec.kind {
        DegradationKind::Noise { snr_db, noise } => {
            let n = match noise {
                NoiseKind::Pink => pink_noise(spec.seed, s.len(), s.sample_rate_hz),
                NoiseKind::Babble => babble_noise(spec.seed, s.len(), s.sample_rate_hz),
            };
            let x = mix_at_snr(s, &n, *snr_db)?;
            let c = propagate(s, &rirs.0);
            (x, c)
        }
        DegradationKind::Reverb { rir } => {
            let mut x = apply_reverb(s, rir);
            if reverb_through_primary {
                x = propagate(&x, &rirs.0);
            }
            (x, s.clone())
        }
        DegradationKind::Clip { eta } => (apply_clip(s, *eta)?, s.clone()),
    };
    let _ = scene;
    Ok(TaskSample {
        x,
        c,
        spec: spec.clone(),
        scene_id: scene_id.to_string(),
    })
}

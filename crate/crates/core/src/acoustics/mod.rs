//! Physical loop simulation: image-method room impulse responses for the
//! primary and secondary paths, loudspeaker saturation, signal composition
//! at the modification microphone, and the causality/lookahead helpers.

mod cache;
mod image;
mod sef;

pub use cache::{read_rir_cache, write_rir_cache};
pub use image::simulate_rir;
pub use sef::{sef, sef_derivative, sef_sample};

use crate::dsp::{convolve, ConvMode, Waveform};
use crate::error::{AseError, Result};

pub type Position = [f64; 3];

/// Rectangular room with a uniform target reverberation time.
#[derive(Debug, Clone, PartialEq)]
pub struct RoomSpec {
    pub dims_m: [f64; 3],
    pub t60_s: f64,
    pub speed_of_sound: f64,
    pub sample_rate_hz: u32,
}

impl RoomSpec {
    pub fn new(dims_m: [f64; 3], t60_s: f64, sample_rate_hz: u32) -> Result<Self> {
        if dims_m.iter().any(|d| *d <= 0.0) {
            return Err(AseError::invalid("room dimensions must be positive"));
        }
        if !(0.05..=2.0).contains(&t60_s) {
            return Err(AseError::invalid(format!(
                "t60 {t60_s} outside supported range [0.05, 2]"
            )));
        }
        if sample_rate_hz == 0 {
            return Err(AseError::invalid("sample rate must be positive"));
        }
        Ok(RoomSpec {
            dims_m,
            t60_s,
            speed_of_sound: 343.0,
            sample_rate_hz,
        })
    }

    /// Uniform wall reflection coefficient from T60 by the mean-free-path
    /// (Eyring/Sabine) inversion.
    pub fn wall_reflection(&self) -> f64 {
        let [lx, ly, lz] = self.dims_m;
        let inv_sum = 1.0 / lx + 1.0 / ly + 1.0 / lz;
        (-13.82 / (self.speed_of_sound * self.t60_s * inv_sum)).exp()
    }
}

/// The full acoustic scene: room, transducer positions, RIR length, and the
/// loudspeaker saturation parameter (infinity = linear loudspeaker).
#[derive(Debug, Clone, PartialEq)]
pub struct AcousticScene {
    pub room: RoomSpec,
    pub ref_mic_pos: Position,
    pub mod_mic_pos: Position,
    pub speaker_pos: Position,
    pub rir_len: usize,
    pub lambda_sq: f64,
}

fn inside(room: &RoomSpec, p: &Position) -> bool {
    p.iter()
        .zip(room.dims_m.iter())
        .all(|(x, d)| *x > 0.0 && *x < *d)
}

pub fn distance(a: &Position, b: &Position) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl AcousticScene {
    pub fn new(
        room: RoomSpec,
        ref_mic_pos: Position,
        mod_mic_pos: Position,
        speaker_pos: Position,
        rir_len: usize,
        lambda_sq: f64,
    ) -> Result<Self> {
        for (name, p) in [
            ("ref mic", &ref_mic_pos),
            ("mod mic", &mod_mic_pos),
            ("speaker", &speaker_pos),
        ] {
            if !inside(&room, p) {
                return Err(AseError::invalid(format!(
                    "{name} position {p:?} not strictly inside room {:?}",
                    room.dims_m
                )));
            }
        }
        if rir_len == 0 {
            return Err(AseError::invalid("rir_len must be >= 1"));
        }
        if !(lambda_sq > 0.0) {
            return Err(AseError::invalid("lambda_sq must be > 0 or infinity"));
        }
        Ok(AcousticScene {
            room,
            ref_mic_pos,
            mod_mic_pos,
            speaker_pos,
            rir_len,
            lambda_sq,
        })
    }

    /// The benchmark desk scene: 3 x 4 x 2 m room, reference mic at
    /// [1.5, 1, 1], loudspeaker at [1.5, 2.5, 1], modification mic at
    /// [1.5, 3, 1], 512-tap paths.
    pub fn bench_default(t60_s: f64, lambda_sq: f64) -> Result<Self> {
        let room = RoomSpec::new([3.0, 4.0, 2.0], t60_s, 16000)?;
        AcousticScene::new(
            room,
            [1.5, 1.0, 1.0],
            [1.5, 3.0, 1.0],
            [1.5, 2.5, 1.0],
            512,
            lambda_sq,
        )
    }

    /// Simulate both paths: primary (reference source position to the
    /// modification mic) and secondary (loudspeaker to the modification mic).
    pub fn simulate_paths(&self, seed: u64) -> Result<(Rir, Rir)> {
        let primary = simulate_rir(
            &self.room,
            &self.ref_mic_pos,
            &self.mod_mic_pos,
            self.rir_len,
            seed,
        )?;
        let secondary = simulate_rir(
            &self.room,
            &self.speaker_pos,
            &self.mod_mic_pos,
            self.rir_len,
            seed.wrapping_add(1),
        )?;
        Ok((
            Rir {
                taps: primary,
                role: RirRole::Primary,
            },
            Rir {
                taps: secondary,
                role: RirRole::Secondary,
            },
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RirRole {
    Primary,
    Secondary,
}

/// A finite impulse response for one acoustic path.
#[derive(Debug, Clone, PartialEq)]
pub struct Rir {
    pub taps: Vec<f64>,
    pub role: RirRole,
}

impl Rir {
    pub fn impulse(len: usize, role: RirRole) -> Self {
        let mut taps = vec![0.0; len.max(1)];
        taps[0] = 1.0;
        Rir { taps, role }
    }

    pub fn delay(len: usize, delay: usize, role: RirRole) -> Self {
        let mut taps = vec![0.0; len.max(delay + 1)];
        taps[delay] = 1.0;
        Rir { taps, role }
    }
}

/// Causal filtering of a waveform through a path impulse response.
pub fn propagate(x: &Waveform, rir: &Rir) -> Waveform {
    let samples = convolve(&x.samples, &rir.taps, ConvMode::SameLeading)
        .expect("non-empty signal and taps");
    Waveform {
        samples,
        sample_rate_hz: x.sample_rate_hz,
    }
}

/// Enhanced-signal composition at the modification microphone.
#[derive(Debug, Clone)]
pub struct RenderedAse {
    pub d: Waveform,
    pub a: Waveform,
    pub eh: Waveform,
}

/// Compose d = P * x, a = S * f_LS(y), eh = d + a.
pub fn render_ase(
    x: &Waveform,
    y: &Waveform,
    scene: &AcousticScene,
    rirs: &(Rir, Rir),
) -> Result<RenderedAse> {
    if x.len() != y.len() {
        return Err(AseError::invalid(format!(
            "x ({}) and y ({}) must have equal length",
            x.len(),
            y.len()
        )));
    }
    if x.sample_rate_hz != y.sample_rate_hz {
        return Err(AseError::invalid("x and y sample rates differ"));
    }
    let d = propagate(x, &rirs.0);
    let driven = Waveform {
        samples: sef(&y.samples, scene.lambda_sq)?,
        sample_rate_hz: y.sample_rate_hz,
    };
    let a = propagate(&driven, &rirs.1);
    let eh = Waveform {
        samples: d
            .samples
            .iter()
            .zip(&a.samples)
            .map(|(p, q)| p + q)
            .collect(),
        sample_rate_hz: x.sample_rate_hz,
    };
    Ok(RenderedAse { d, a, eh })
}

/// Advance the control signal by `lookahead` samples (the output is treated
/// as if it had been produced that many samples early), zero-padding the
/// tail.
pub fn apply_lookahead(y: &Waveform, lookahead: usize) -> Result<Waveform> {
    if lookahead >= y.len() && !(lookahead == 0 && y.is_empty()) {
        return Err(AseError::invalid(format!(
            "lookahead {lookahead} >= signal length {}",
            y.len()
        )));
    }
    let mut samples = y.samples[lookahead..].to_vec();
    samples.resize(y.len(), 0.0);
    Ok(Waveform {
        samples,
        sample_rate_hz: y.sample_rate_hz,
    })
}

/// Acoustic delay budget: time from reference mic to modification mic minus
/// time from loudspeaker to modification mic.
pub fn causality_margin(scene: &AcousticScene) -> f64 {
    let c = scene.room.speed_of_sound;
    let t_p = distance(&scene.ref_mic_pos, &scene.mod_mic_pos) / c;
    let t_s = distance(&scene.speaker_pos, &scene.mod_mic_pos) / c;
    t_p - t_s
}

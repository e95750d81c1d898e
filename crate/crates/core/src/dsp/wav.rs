//! Mono WAV read/write: PCM 16-bit and IEEE float-32.

use super::Waveform;
use crate::error::{AseError, Result};
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavEncoding {
    Pcm16,
    Float32,
}

fn err(path: &Path, msg: &str) -> AseError {
    AseError::invalid(format!("{}: {msg}", path.display()))
}

/// Read a mono WAV file. Samples are normalized to [-1, 1].
pub fn read_wav(path: impl AsRef<Path>) -> Result<Waveform> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| AseError::io(path.display().to_string(), e))?;
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(err(path, "not a RIFF/WAVE file"));
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None; // (tag, channels, rate, bits)
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_end = (pos + 8 + size).min(bytes.len());
        let body = &bytes[pos + 8..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    return Err(err(path, "fmt chunk too short"));
                }
                let tag = u16::from_le_bytes(body[0..2].try_into().unwrap());
                let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
                let rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes(body[14..16].try_into().unwrap());
                fmt = Some((tag, channels, rate, bits));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        pos += 8 + size + (size & 1);
    }

    let (tag, channels, rate, bits) = fmt.ok_or_else(|| err(path, "missing fmt chunk"))?;
    let data = data.ok_or_else(|| err(path, "missing data chunk"))?;
    if channels != 1 {
        return Err(err(path, &format!("expected mono, got {channels} channels")));
    }

    let samples: Vec<f64> = match (tag, bits) {
        (1, 16) => data
            .chunks_exact(2)
            .map(|c| i16::from_le_bytes([c[0], c[1]]) as f64 / 32768.0)
            .collect(),
        (3, 32) => data
            .chunks_exact(4)
            .map(|c| {
                (f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64).clamp(-1.0, 1.0)
            })
            .collect(),
        _ => {
            return Err(err(
                path,
                &format!("unsupported format tag {tag} / {bits} bits"),
            ))
        }
    };

    Waveform::new(samples, rate)
}

/// Write a mono WAV file, clamping samples to [-1, 1].
pub fn write_wav(path: impl AsRef<Path>, w: &Waveform, enc: WavEncoding) -> Result<()> {
    let path = path.as_ref();
    let (tag, bits, frame): (u16, u16, usize) = match enc {
        WavEncoding::Pcm16 => (1, 16, 2),
        WavEncoding::Float32 => (3, 32, 4),
    };
    let data_len = w.len() * frame;
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&tag.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&w.sample_rate_hz.to_le_bytes());
    let byte_rate = w.sample_rate_hz * frame as u32;
    out.extend_from_slice(&byte_rate.to_le_bytes());
    out.extend_from_slice(&(frame as u16).to_le_bytes());
    out.extend_from_slice(&bits.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &s in &w.samples {
        let v = s.clamp(-1.0, 1.0);
        match enc {
            WavEncoding::Pcm16 => {
                let q = (v * 32767.0).round() as i16;
                out.extend_from_slice(&q.to_le_bytes());
            }
            WavEncoding::Float32 => out.extend_from_slice(&(v as f32).to_le_bytes()),
        }
    }
    fs::write(path, out).map_err(|e| AseError::io(path.display().to_string(), e))
}

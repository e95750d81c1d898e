//! RIR cache files: little-endian binary taps plus a text metadata sidecar.
//!
//! Layout: magic "ASERIR1", u32 tap count, then f64 taps. The sidecar at
//! `<path>.meta.txt` records room, positions, T60, and seed as `key = value`
//! lines.

use super::{Position, Rir, RirRole, RoomSpec};
use crate::error::{AseError, Result};
use std::fs;
use std::path::Path;

const MAGIC: &[u8; 7] = b"ASERIR1";

#[derive(Debug, Clone, PartialEq)]
pub struct RirCacheMeta {
    pub room: RoomSpec,
    pub src: Position,
    pub mic: Position,
    pub seed: u64,
    pub role: RirRole,
}

pub fn write_rir_cache(path: impl AsRef<Path>, rir: &Rir, meta: &RirCacheMeta) -> Result<()> {
    let path = path.as_ref();
    let mut bytes = Vec::with_capacity(7 + 4 + rir.taps.len() * 8);
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&(rir.taps.len() as u32).to_le_bytes());
    for t in &rir.taps {
        bytes.extend_from_slice(&t.to_le_bytes());
    }
    fs::write(path, bytes).map_err(|e| AseError::io(path.display().to_string(), e))?;

    let role = match meta.role {
        RirRole::Primary => "primary",
        RirRole::Secondary => "secondary",
    };
    let text = format!(
        "role = {role}\n\
         room_m = {:?}\n\
         t60_s = {}\n\
         sample_rate_hz = {}\n\
         src = {:?}\n\
         mic = {:?}\n\
         seed = {}\n",
        meta.room.dims_m, meta.room.t60_s, meta.room.sample_rate_hz, meta.src, meta.mic, meta.seed
    );
    let side = sidecar_path(path);
    fs::write(&side, text).map_err(|e| AseError::io(side.display().to_string(), e))
}

pub fn read_rir_cache(path: impl AsRef<Path>, role: RirRole) -> Result<Rir> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| AseError::io(path.display().to_string(), e))?;
    if bytes.len() < 11 || &bytes[..7] != MAGIC {
        return Err(AseError::invalid(format!(
            "{}: not an ASERIR1 cache file",
            path.display()
        )));
    }
    let count = u32::from_le_bytes(bytes[7..11].try_into().unwrap()) as usize;
    if bytes.len() != 11 + count * 8 {
        return Err(AseError::invalid(format!(
            "{}: truncated cache ({} taps declared)",
            path.display(),
            count
        )));
    }
    let taps = bytes[11..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Rir { taps, role })
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".meta.txt");
    std::path::PathBuf::from(s)
}

//! Window functions.

use crate::error::{AseError, Result};
use std::f64::consts::PI;

/// Periodic Hann window: w[k] = 0.5 (1 - cos(2 pi k / len)).
///
/// The periodic form (rather than the symmetric one) gives exact
/// constant-overlap-add of the squared window at hop = len/4.
pub fn hann_window(len: usize) -> Result<Vec<f64>> {
    if len < 2 {
        return Err(AseError::invalid(format!(
            "hann_window requires len >= 2, got {len}"
        )));
    }
    Ok((0..len)
        .map(|k| 0.5 * (1.0 - (2.0 * PI * k as f64 / len as f64).cos()))
        .collect())
}

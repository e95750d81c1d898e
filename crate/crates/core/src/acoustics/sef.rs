//! Scaled error function loudspeaker saturation.
//!
//! f_LS{y} = integral_0^y exp(-z^2 / (2 lambda^2)) dz
//!         = sqrt(pi lambda^2 / 2) * erf(y / sqrt(2 lambda^2)).
//!
//! lambda^2 = infinity degenerates to the identity (linear loudspeaker).

use crate::error::{AseError, Result};
use std::f64::consts::PI;

/// Memoryless saturation of a single sample.
pub fn sef_sample(y: f64, lambda_sq: f64) -> f64 {
    if lambda_sq.is_infinite() {
        return y;
    }
    let scale = (PI * lambda_sq / 2.0).sqrt();
    scale * libm::erf(y / (2.0 * lambda_sq).sqrt())
}

/// d f_LS / dy = exp(-y^2 / (2 lambda^2)).
pub fn sef_derivative(y: f64, lambda_sq: f64) -> f64 {
    if lambda_sq.is_infinite() {
        return 1.0;
    }
    (-y * y / (2.0 * lambda_sq)).exp()
}

/// Saturate a whole sequence.
pub fn sef(y: &[f64], lambda_sq: f64) -> Result<Vec<f64>> {
    if !(lambda_sq > 0.0) {
        return Err(AseError::invalid("lambda_sq must be > 0 or infinity"));
    }
    if lambda_sq.is_infinite() {
        return Ok(y.to_vec());
    }
    Ok(y.iter().map(|v| sef_sample(*v, lambda_sq)).collect())
}

//! Desk-scale active speech enhancement testbed.
//!
//! The crate simulates the acoustic loop of a feedforward active speech
//! enhancement (ASE) system: a disturbance source picked up by a reference
//! microphone, primary and secondary room paths, and a saturating
//! loudspeaker driven by a control signal. On top of the simulation it
//! provides degraded-speech task generation (noise / reverb / clip),
//! classical FxLMS-family adaptive baselines, a small reverse-mode autodiff
//! engine, a toy-scale Transformer-Mamba enhancement model trained with a
//! six-term spectral loss, and NMSE/STOI evaluation.

pub mod acoustics;
pub mod adaptive;
pub mod autodiff;
pub mod config;
pub mod dataset;
pub mod degrade;
pub mod dsp;
pub mod error;
pub mod loss;
pub mod metrics;
pub mod model;
pub mod train;

pub use dsp::{ComplexSpectrogram, StftConfig, Waveform};
pub use error::{AseError, Result};

//! Distortion of normalized quasiconformal maps, numerically.
//!
//! The library evaluates the conformal special functions of the plane
//! (`𝒦`, `μ`, `μ⁻¹`, `γ₂`, `φ_{K,2}`), the chordal, distance-ratio and
//! quasihyperbolic metrics, the explicit envelopes bounding where a
//! `K`-quasiconformal map fixing `0`, `e₁`, `∞` can send a point, and runs
//! seeded sampling suites that check every inequality behind those bounds.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to one of them.

// `!(x > 0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod distortion_envelope;
pub mod error;
pub mod inequality_lab;
pub mod metrics;
pub mod oracle_maps;
pub mod point;
pub mod scalar;
pub mod special_functions;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Point64 = point::Point<f64>;
pub type Point32 = point::Point<f32>;
pub type ExtendedPoint64 = point::ExtendedPoint<f64>;
pub type ExtendedPoint32 = point::ExtendedPoint<f32>;
pub type Params64 = special_functions::DistortionParams<f64>;
pub type Params32 = special_functions::DistortionParams<f32>;
pub type EtaStarBound64 = special_functions::EtaStarBound<f64>;
pub type RingShell64 = distortion_envelope::RingShell<f64>;
pub type RingShell32 = distortion_envelope::RingShell<f32>;
pub type EnvelopeSet64 = distortion_envelope::EnvelopeSet<f64>;
pub type EnvelopeBound64 = distortion_envelope::EnvelopeBound<f64>;
pub type EnvelopeBound32 = distortion_envelope::EnvelopeBound<f32>;
pub type RadialStretch64 = oracle_maps::RadialStretch<f64>;
pub type RadialStretch32 = oracle_maps::RadialStretch<f32>;
pub type ExponentPair64 = inequality_lab::ExponentPair<f64>;
pub type Margin64 = inequality_lab::Margin<f64>;

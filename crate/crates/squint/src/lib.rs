//! Gaussian quantum-optics simulation of Mach-Zehnder interferometry with
//! coherent and squeezed-vacuum light.
//!
//! The crate has three layers:
//!
//! - exact Gaussian phase-space machinery ([`gaussian`]) and the optical
//!   circuits built on it ([`circuits`]);
//! - detection observables and phase sensitivities ([`detection`]): parity
//!   and intensity-difference signals in both closed form and through the
//!   numeric pipeline, error-propagation sensitivities, the quantum
//!   Cramér-Rao bound, benchmark limits, and fringe-width measurement;
//! - an independent truncated Fock-space oracle ([`fock`]) that re-derives
//!   the same observables by brute force, plus a sweep engine
//!   ([`scenario`], [`engine`], [`table`], [`figures`]) and a verification
//!   matrix ([`verify`]) wiring everything together for the CLI.
//!
//! Grid evaluation is data-parallel through rayon when the default
//! `parallel` feature is on; disabling it falls back to the identical
//! sequential path.

pub mod circuits;
pub mod detection;
pub mod engine;
pub mod error;
pub mod figures;
pub mod fock;
pub mod gaussian;
pub mod scenario;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use gaussian::{GaussianState, IntensityMoments, LinearMap};

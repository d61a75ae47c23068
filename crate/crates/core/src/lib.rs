//! Temporally multiplexed non-Gaussian states from two-photon subtraction
//! off a cw squeezed beam.
//!
//! A continuous-wave optical parametric oscillator emits a squeezed beam; a
//! weak tap feeds two on/off photodetectors, and a coincidence at times
//! separated by `delta` heralds a two-mode non-Gaussian state in the
//! remaining beam. This crate models that pipeline end to end:
//!
//! * [`temporal_modes`] — the exponential packet pair, the orthonormal
//!   unbiased / biased mode sets built from it, and closed-form kernel
//!   integrals (validated against [`quadrature`]).
//! * [`gaussian_state`] — the 4x4 quadrature covariances of signal and
//!   trigger modes and the Gaussian characteristic function.
//! * [`conditioning`] — the on/off POVM applied to both triggers, yielding a
//!   signed four-term Gaussian mixture and the detection probability.
//! * [`observables`] — Wigner functions, mean photon numbers (exact and
//!   closed-form), squeezing curves.
//! * [`ideal_model`] — the lossless pure-state amplitudes used as a limiting
//!   oracle.
//!
//! The crate is `no_std` (with `alloc`); all floating-point math goes
//! through `libm`, so results are reproducible bit for bit.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(feature = "std")]
extern crate std;

pub mod conditioning;
pub mod gaussian_state;
pub mod ideal_model;
pub mod math;
pub mod observables;
pub mod quadrature;
pub mod temporal_modes;

pub use conditioning::{condition, dress_homodyne, ConditioningError, GaussianMixture};
pub use gaussian_state::{PhysicalParams, SignalBasis, StateError};
pub use observables::{
    mean_photon_closed, mean_photon_general, photon_numbers, squeezing_curve, wigner_single,
    wigner_two_mode, GridSpec, Parity, PhotonNumbers, WignerGrid,
};

//! Spherical quantum pendulum in combined orienting (−η cosθ) and aligning
//! (−ζ cos²θ) fields: banded free-rotor-basis Hamiltonians, a 1D grid solver
//! for the effective θ potential, directional observables, eigensurface
//! topology, and the supersymmetric (SUSY QM) construction of analytic
//! solutions on the crossing loci η = 2k√ζ.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `std`
//! feature (default) for `std::error::Error` impls.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod basis;
pub mod eigen;
pub mod error;
pub mod grid;
pub mod math;
pub mod model;
pub mod spectral;
pub mod susy;
pub mod topology;

pub use error::Error;

//! Per-wavevector spectral machinery for the incompressible
//! Navier-Stokes-Maxwell system with generalized Ohm's law.
//!
//! Everything here is a pure function of its arguments and works without
//! the standard library: the Fourier symbol of the damped Maxwell operator,
//! its closed-form eigenstructure and semigroup, the eigenbasis splitting of
//! `(e, b)` modes, the eigenvalue estimates used for the frequency-band
//! analysis, and the band thresholds themselves.
//!
//! Field storage, transforms and time integration live in the `nsm-lab`
//! crate, which builds on this one.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bands;
pub mod math;
pub mod params;
pub mod spectral_maxwell;
pub mod vec3;

pub use bands::{Band, BandSpec, BandThresholds};
pub use params::{ParamError, PhysParams};
pub use spectral_maxwell::{
    decompose_initial, eigen_structure, band_bounds_check, maxwell_symbol, propagate_mode,
    DecomposeError, EigenStructure, ModePair, ModePropagator, Regime, SpectralError, Wavevector,
};
pub use vec3::CVec3;

pub use num_complex::Complex64;

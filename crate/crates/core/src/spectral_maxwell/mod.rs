//! The Fourier symbol of the damped Maxwell operator
//!
//! ```text
//!          [ -I/(beta eta^2 gamma^2)    (i/gamma) xi x ]
//! A(xi) =  [                                          ]
//!          [ -(i/gamma) xi x            0             ]
//! ```
//!
//! acting on `(e, b)` mode pairs, together with its closed-form eigenvalues,
//! the exact semigroup `exp(t A(xi))`, the eigenbasis splitting of a mode
//! pair and the eigenvalue estimates that drive the band analysis.
//!
//! The symbol is handled in the full 6-dimensional `(e, b)` space. The
//! direction `b || xi` is an extra zero eigenvalue that never carries energy
//! because every solver field is divergence-free.

mod decompose;
mod eigen;
mod bounds;
mod propagator;
pub mod scan;
mod symbol;

use core::fmt;

pub use decompose::{decompose_initial, DecomposeError, ModeSplit};
pub use eigen::{eigen_structure, raw_eigenvalues, EigenStructure, Regime, RESONANCE_TOL};
pub use bounds::{
    empirical_omega, band_bounds_check, low_band_plus_constant, Inequality, InequalityKind,
    BandBoundsReport, BOUNDS_RTOL,
};
pub use propagator::{propagate_mode, ModePropagator};
pub use symbol::{maxwell_symbol, SymbolMatrix};

use crate::math;
use crate::vec3::CVec3;

/// A Fourier frequency `xi` (radians per unit length).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavevector {
    pub xi: [f64; 3],
}

impl Wavevector {
    pub const ZERO: Wavevector = Wavevector { xi: [0.0; 3] };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Wavevector { xi: [x, y, z] }
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.xi[0] * self.xi[0] + self.xi[1] * self.xi[1] + self.xi[2] * self.xi[2]
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        math::sqrt(self.norm_sqr())
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.xi == [0.0; 3]
    }

    pub fn is_finite(&self) -> bool {
        self.xi.iter().all(|c| c.is_finite())
    }
}

impl From<[f64; 3]> for Wavevector {
    fn from(xi: [f64; 3]) -> Self {
        Wavevector { xi }
    }
}

/// Fourier amplitudes `(e_hat, b_hat)` of the electric and magnetic field at
/// one wavevector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModePair {
    pub e: CVec3,
    pub b: CVec3,
}

impl ModePair {
    pub const ZERO: ModePair = ModePair { e: CVec3::ZERO, b: CVec3::ZERO };

    pub fn new(e: CVec3, b: CVec3) -> Self {
        ModePair { e, b }
    }

    /// Euclidean norm on `C^3 x C^3`.
    pub fn norm(&self) -> f64 {
        math::sqrt(self.e.norm_sqr() + self.b.norm_sqr())
    }

    pub fn to_array(&self) -> [num_complex::Complex64; 6] {
        let (e, b) = (&self.e.0, &self.b.0);
        [e[0], e[1], e[2], b[0], b[1], b[2]]
    }

    pub fn from_array(v: [num_complex::Complex64; 6]) -> Self {
        ModePair { e: CVec3([v[0], v[1], v[2]]), b: CVec3([v[3], v[4], v[5]]) }
    }
}

impl core::ops::Add for ModePair {
    type Output = ModePair;
    fn add(self, o: ModePair) -> ModePair {
        ModePair { e: self.e + o.e, b: self.b + o.b }
    }
}

impl core::ops::Sub for ModePair {
    type Output = ModePair;
    fn sub(self, o: ModePair) -> ModePair {
        ModePair { e: self.e - o.e, b: self.b - o.b }
    }
}

impl core::ops::Mul<num_complex::Complex64> for ModePair {
    type Output = ModePair;
    fn mul(self, c: num_complex::Complex64) -> ModePair {
        ModePair { e: self.e * c, b: self.b * c }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralError {
    /// The generic eigen formulas do not apply at `xi = 0`.
    ZeroWavevector,
    NonFiniteWavevector,
    NegativeTime(f64),
    /// The band constant must satisfy `1 < K < 2` for the estimates.
    BadBandConstant(f64),
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::ZeroWavevector => {
                write!(f, "zero wavevector: use the xi = 0 branch of the propagator")
            }
            SpectralError::NonFiniteWavevector => write!(f, "wavevector has non-finite components"),
            SpectralError::NegativeTime(t) => write!(f, "propagation time must be nonnegative, got {t}"),
            SpectralError::BadBandConstant(k) => write!(f, "band constant K = {k} must lie in (1, 2)"),
        }
    }
}

impl core::error::Error for SpectralError {}

//! Periodic-box spectral field algebra.
//!
//! Fields live on the torus `[0, 2pi)^3` sampled at `n^3` points. Spectral
//! coefficients are the unnormalized forward DFT of the samples; the inverse
//! carries the `1/n^3`. Every norm applies the Parseval factor
//! `(2pi)^3 / n^6` explicitly, so that `l2_norm` is the continuous
//! `L^2(T^3)` norm of the trigonometric interpolant.

mod fft;
mod grid;
mod norms;
mod ops;
pub mod random;
pub mod snapshot;

use num_complex::Complex64;
use thiserror::Error;

pub use grid::Grid;
pub use norms::{energy, hdot_norm, inner_product, l2_distance, l2_norm};
pub use grid::DEALIAS_TWO_THIRDS;
pub use ops::{
    band_filter, band_norms, cross_physical, curl, dealiased_cross, dealiased_outer, div, div_tensor, grad, laplacian, leray_project,
    leray_project_in_place,
    masked_physical, TensorField,
};

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("fields live on different grids (n = {0} vs n = {1})")]
    GridMismatch(usize, usize),
    #[error("band thresholds are not increasing: {0:?}")]
    NonMonotoneThresholds([f64; 4]),
    #[error("snapshot format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A scalar field in spectral representation.
#[derive(Debug, Clone)]
pub struct ScalarField {
    pub grid: Grid,
    pub coeffs: Vec<Complex64>,
}

impl ScalarField {
    pub fn zeros(grid: &Grid) -> Self {
        ScalarField { grid: grid.clone(), coeffs: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn to_physical(&self) -> Vec<f64> {
        let mut buf = self.coeffs.clone();
        self.grid.inverse(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    pub fn from_physical(grid: &Grid, values: &[f64]) -> Self {
        let mut buf: Vec<Complex64> = values.iter().map(|v| Complex64::new(*v, 0.0)).collect();
        grid.forward(&mut buf);
        ScalarField { grid: grid.clone(), coeffs: buf }
    }

    /// Largest absolute value on the sample points.
    pub fn max_abs(&self) -> f64 {
        self.to_physical().into_iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// A 3-vector field in spectral representation.
#[derive(Debug, Clone)]
pub struct SpectralField {
    pub grid: Grid,
    pub comps: [Vec<Complex64>; 3],
    /// Set by operations whose output is divergence-free by construction.
    pub div_free: bool,
}

impl SpectralField {
    pub fn zeros(grid: &Grid) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); grid.len()];
        SpectralField { grid: grid.clone(), comps: [z.clone(), z.clone(), z], div_free: true }
    }

    pub fn from_physical(grid: &Grid, values: &[Vec<f64>; 3]) -> Self {
        let comps = [0, 1, 2].map(|c| {
            let mut buf: Vec<Complex64> = values[c].iter().map(|v| Complex64::new(*v, 0.0)).collect();
            grid.forward(&mut buf);
            buf
        });
        SpectralField { grid: grid.clone(), comps, div_free: false }
    }

    /// Sample `f(x, y, z)` on the grid points and transform.
    pub fn from_fn(grid: &Grid, f: impl Fn(f64, f64, f64) -> [f64; 3]) -> Self {
        let n = grid.n();
        let h = grid.spacing();
        let mut values = [vec![0.0; grid.len()], vec![0.0; grid.len()], vec![0.0; grid.len()]];
        for ix in 0..n {
            for iy in 0..n {
                for iz in 0..n {
                    let v = f(ix as f64 * h, iy as f64 * h, iz as f64 * h);
                    let idx = grid.index(ix, iy, iz);
                    for c in 0..3 {
                        values[c][idx] = v[c];
                    }
                }
            }
        }
        Self::from_physical(grid, &values)
    }

    pub fn to_physical(&self) -> [Vec<f64>; 3] {
        [0, 1, 2].map(|c| {
            let mut buf = self.comps[c].clone();
            self.grid.inverse(&mut buf);
            buf.into_iter().map(|v| v.re).collect()
        })
    }

    pub fn same_grid(&self, other: &SpectralField) -> Result<(), FieldError> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(FieldError::GridMismatch(self.grid.n(), other.grid.n()))
        }
    }

    /// Coefficients at mode `idx` as a complex 3-vector.
    #[inline]
    pub fn mode(&self, idx: usize) -> nsm_core::CVec3 {
        nsm_core::CVec3([self.comps[0][idx], self.comps[1][idx], self.comps[2][idx]])
    }

    #[inline]
    pub fn set_mode(&mut self, idx: usize, v: nsm_core::CVec3) {
        for c in 0..3 {
            self.comps[c][idx] = v.0[c];
        }
    }

    pub fn scale(&self, a: f64) -> SpectralField {
        let mut out = self.clone();
        out.scale_in_place(a);
        out
    }

    pub fn scale_in_place(&mut self, a: f64) {
        for c in self.comps.iter_mut() {
            for v in c.iter_mut() {
                *v *= a;
            }
        }
    }

    /// `self + a * other`; the divergence tag survives only if both carry it.
    pub fn axpy(&self, a: f64, other: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.axpy_in_place(a, other);
        out
    }

    pub fn axpy_in_place(&mut self, a: f64, other: &SpectralField) {
        debug_assert!(self.grid == other.grid);
        for c in 0..3 {
            for (x, y) in self.comps[c].iter_mut().zip(&other.comps[c]) {
                *x += *y * a;
            }
        }
        self.div_free = self.div_free && other.div_free;
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        self.axpy(-1.0, other)
    }

    pub fn add(&self, other: &SpectralField) -> SpectralField {
        self.axpy(1.0, other)
    }

    /// Mean value (the `xi = 0` coefficient divided by `n^3`).
    pub fn mean(&self) -> [Complex64; 3] {
        let scale = 1.0 / self.grid.len() as f64;
        [0, 1, 2].map(|c| self.comps[c][0] * scale)
    }

    /// Zero every mode outside the 2/3 dealiasing cube.
    pub fn dealias_in_place(&mut self) {
        for (idx, keep) in self.grid.dealias_mask().iter().enumerate() {
            if !keep {
                for c in 0..3 {
                    self.comps[c][idx] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }

    /// `max_xi |xi . f(xi)| / (|xi| |f(xi)| + eps)` over nonzero modes.
    pub fn divergence_ratio(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for idx in 1..self.grid.len() {
            let xi = self.grid.wavevector(idx);
            let m = self.mode(idx);
            let k = self.grid.k2(idx).sqrt();
            let r = m.dot_real(&xi).norm() / (k * m.norm() + f64::EPSILON);
            worst = worst.max(r);
        }
        worst
    }

    /// Largest `|div f|` over the sample points.
    pub fn max_divergence(&self) -> f64 {
        div(self).max_abs()
    }

    /// Largest deviation from `f(-xi) = conj(f(xi))` among modes whose
    /// partner is representable on the lattice.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for idx in 0..self.grid.len() {
            let Some(partner) = self.grid.negated_index(idx) else { continue };
            for c in 0..3 {
                worst = worst.max((self.comps[c][idx] - self.comps[c][partner].conj()).norm());
            }
        }
        worst
    }

    /// Pointwise maximum of `|f(x)|` on the sample points.
    pub fn linf_norm(&self) -> f64 {
        let phys = self.to_physical();
        (0..self.grid.len())
            .map(|i| (phys[0][i] * phys[0][i] + phys[1][i] * phys[1][i] + phys[2][i] * phys[2][i]).sqrt())
            .fold(0.0, f64::max)
    }

    /// Copy onto another grid by matching wavevectors. Modes not
    /// representable on the target (or on the source Nyquist planes) are
    /// dropped.
    pub fn resample(&self, target: &Grid) -> SpectralField {
        let mut out = SpectralField::zeros(target);
        let scale = (target.len() as f64) / (self.grid.len() as f64);
        let half_src = (self.grid.n() / 2) as i64;
        let half_dst = (target.n() / 2) as i64;
        for idx in 0..self.grid.len() {
            let w = self.grid.integer_wavevector(idx);
            if w.iter().any(|c| c.abs() >= half_src || c.abs() >= half_dst) {
                continue;
            }
            let t = target.index_of(w);
            for c in 0..3 {
                out.comps[c][t] = self.comps[c][idx] * scale;
            }
        }
        out.div_free = self.div_free;
        out
    }
}

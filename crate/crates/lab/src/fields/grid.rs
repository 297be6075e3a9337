use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::fft::Support;
use super::FieldError;

/// Default dealiasing fraction (the 2/3 rule).
pub const DEALIAS_TWO_THIRDS: f64 = 2.0 / 3.0;

/// An `n^3` periodic grid with cached FFT plans, wavevectors and the
/// dealiasing mask. Cheap to clone.
#[derive(Clone)]
pub struct Grid {
    inner: Arc<GridInner>,
}

struct GridInner {
    n: usize,
    dealias_fraction: f64,
    wavenumbers: Vec<i64>,
    xi: Vec<[f64; 3]>,
    xi_odd: Vec<[f64; 3]>,
    negated: Vec<usize>,
    k2: Vec<f64>,
    dealias: Vec<bool>,
    /// Per-axis flag: index inside the dealiasing cube.
    axis_kept: Vec<bool>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n", &self.inner.n)
            .field("dealias_fraction", &self.inner.dealias_fraction)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n == other.inner.n && self.inner.dealias_fraction == other.inner.dealias_fraction)
    }
}

impl Grid {
    pub fn new(n: usize, dealias_fraction: f64) -> Result<Grid, FieldError> {
        if n < 4 || n % 2 != 0 {
            return Err(FieldError::InvalidGrid(format!("n must be even and at least 4, got {n}")));
        }
        if !(dealias_fraction > 0.0 && dealias_fraction <= 1.0) {
            return Err(FieldError::InvalidGrid(format!(
                "dealias_fraction must lie in (0, 1], got {dealias_fraction}"
            )));
        }
        let wavenumbers: Vec<i64> =
            (0..n).map(|i| if i <= n / 2 { i as i64 } else { i as i64 - n as i64 }).collect();
        let cut = dealias_fraction * (n / 2) as f64;
        let len = n * n * n;
        let half = (n / 2) as i64;
        let mut k2 = Vec::with_capacity(len);
        let mut dealias = Vec::with_capacity(len);
        let mut xi = Vec::with_capacity(len);
        let mut xi_odd = Vec::with_capacity(len);
        let mut negated = Vec::with_capacity(len);
        for ix in 0..n {
            for iy in 0..n {
                for iz in 0..n {
                    let w = [wavenumbers[ix], wavenumbers[iy], wavenumbers[iz]];
                    k2.push(w.iter().map(|c| (c * c) as f64).sum());
                    dealias.push(w.iter().all(|c| (c.abs() as f64) <= cut));
                    xi.push(w.map(|c| c as f64));
                    xi_odd.push(w.map(|c| if c.abs() == half { 0.0 } else { c as f64 }));
                    negated.push((((n - ix) % n) * n + (n - iy) % n) * n + (n - iz) % n);
                }
            }
        }
        let axis_kept = wavenumbers.iter().map(|c| (c.abs() as f64) <= cut).collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        Ok(Grid {
            inner: Arc::new(GridInner {
                n,
                dealias_fraction,
                wavenumbers,
                xi,
                xi_odd,
                negated,
                k2,
                dealias,
                axis_kept,
                forward,
                inverse,
            }),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.inner.n * self.inner.n * self.inner.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dealias_fraction(&self) -> f64 {
        self.inner.dealias_fraction
    }

    pub fn spacing(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.inner.n as f64
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.inner.n + iy) * self.inner.n + iz
    }

    #[inline]
    pub fn split_index(&self, idx: usize) -> (usize, usize, usize) {
        let n = self.inner.n;
        (idx / (n * n), (idx / n) % n, idx % n)
    }

    /// Signed wavenumber of a per-axis index; index `n/2` maps to `+n/2`.
    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        self.inner.wavenumbers[i]
    }

    #[inline]
    pub fn integer_wavevector(&self, idx: usize) -> [i64; 3] {
        let (ix, iy, iz) = self.split_index(idx);
        [self.wavenumber(ix), self.wavenumber(iy), self.wavenumber(iz)]
    }

    #[inline]
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        self.inner.xi[idx]
    }

    pub fn wavevectors(&self) -> &[[f64; 3]] {
        &self.inner.xi
    }

    /// Wavevectors for odd-order derivatives: Nyquist components are
    /// zeroed so that real fields stay real.
    pub fn odd_wavevectors(&self) -> &[[f64; 3]] {
        &self.inner.xi_odd
    }

    #[inline]
    pub fn k2(&self, idx: usize) -> f64 {
        self.inner.k2[idx]
    }

    pub fn k2_all(&self) -> &[f64] {
        &self.inner.k2
    }

    pub fn dealias_mask(&self) -> &[bool] {
        &self.inner.dealias
    }

    /// Largest `|xi|` present on the lattice.
    pub fn max_radius(&self) -> f64 {
        3f64.sqrt() * (self.inner.n / 2) as f64
    }

    /// Storage index of an integer wavevector with components in
    /// `[-n/2, n/2]`.
    pub fn index_of(&self, w: [i64; 3]) -> usize {
        let n = self.inner.n as i64;
        let f = |c: i64| c.rem_euclid(n) as usize;
        self.index(f(w[0]), f(w[1]), f(w[2]))
    }

    /// Index of `-xi`, or `None` when `-xi` falls on a Nyquist plane where
    /// it aliases back onto `xi`'s own plane.
    pub fn negated_index(&self, idx: usize) -> Option<usize> {
        let w = self.integer_wavevector(idx);
        let half = (self.inner.n / 2) as i64;
        if w.iter().any(|c| c.abs() == half) {
            return None;
        }
        Some(self.index_of([-w[0], -w[1], -w[2]]))
    }

    /// Spectra of two real fields whose samples are `x` and `y`, computed
    /// only inside the dealiasing cube (zero outside).
    pub fn forward_masked_pair(&self, x: &[f64], y: &[f64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut z: Vec<Complex64> = x.iter().zip(y).map(|(a, b)| Complex64::new(*a, *b)).collect();
        self.transform(&mut z, &self.inner.forward, Support::Output(&self.inner.axis_kept));
        let neg = &self.inner.negated;
        let zero = Complex64::new(0.0, 0.0);
        let mut fx = vec![zero; z.len()];
        let mut fy = vec![zero; z.len()];
        for (k, keep) in self.inner.dealias.iter().enumerate() {
            if *keep {
                let zk = z[k];
                let zc = z[neg[k]].conj();
                fx[k] = (zk + zc) * 0.5;
                fy[k] = Complex64::new(0.0, -0.5) * (zk - zc);
            }
        }
        (fx, fy)
    }

    /// Spectrum of one real field, computed only inside the dealiasing cube.
    pub fn forward_masked(&self, x: &[f64]) -> Vec<Complex64> {
        let mut z: Vec<Complex64> = x.iter().map(|v| Complex64::new(*v, 0.0)).collect();
        self.transform(&mut z, &self.inner.forward, Support::Output(&self.inner.axis_kept));
        for (v, keep) in z.iter_mut().zip(&self.inner.dealias) {
            if !keep {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        z
    }

    /// Samples of two real fields after truncating their spectra to the
    /// dealiasing cube. The cube excludes the Nyquist planes, so the
    /// truncated spectra are Hermitian whenever the inputs are.
    pub fn inverse_masked_pair(&self, a: &[Complex64], b: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
        let zero = Complex64::new(0.0, 0.0);
        let mut z: Vec<Complex64> = a
            .iter()
            .zip(b)
            .zip(&self.inner.dealias)
            .map(|((p, q), keep)| if *keep { p + Complex64::new(-q.im, q.re) } else { zero })
            .collect();
        self.transform(&mut z, &self.inner.inverse, Support::Input(&self.inner.axis_kept));
        let s = 1.0 / self.len() as f64;
        (z.iter().map(|v| v.re * s).collect(), z.iter().map(|v| v.im * s).collect())
    }

    /// Samples of one real field after truncation to the dealiasing cube.
    pub fn inverse_masked(&self, a: &[Complex64]) -> Vec<f64> {
        let zero = Complex64::new(0.0, 0.0);
        let mut z: Vec<Complex64> =
            a.iter().zip(&self.inner.dealias).map(|(v, keep)| if *keep { *v } else { zero }).collect();
        self.transform(&mut z, &self.inner.inverse, Support::Input(&self.inner.axis_kept));
        let s = 1.0 / self.len() as f64;
        z.iter().map(|v| v.re * s).collect()
    }

    /// Unnormalized forward 3D transform in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, &self.inner.forward, Support::Full);
    }

    /// Inverse 3D transform in place, including the `1/n^3` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, &self.inner.inverse, Support::Full);
        let s = 1.0 / self.len() as f64;
        for v in data.iter_mut() {
            *v *= s;
        }
    }

    fn transform(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>, support: Support) {
        super::fft::transform3(self.inner.n, data, plan.as_ref(), support);
    }
}

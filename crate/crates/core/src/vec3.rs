//! Complex 3-vectors (Fourier amplitudes of vector fields at one mode).

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3(pub [Complex64; 3]);

impl CVec3 {
    pub const ZERO: CVec3 = CVec3([Complex64::new(0.0, 0.0); 3]);

    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        CVec3([x, y, z])
    }

    pub fn from_real(v: [f64; 3]) -> Self {
        CVec3([v[0].into(), v[1].into(), v[2].into()])
    }

    /// `xi x self` for a real vector `xi`.
    #[inline]
    pub fn crossed_by(&self, xi: &[f64; 3]) -> CVec3 {
        let a = &self.0;
        CVec3([
            a[2] * xi[1] - a[1] * xi[2],
            a[0] * xi[2] - a[2] * xi[0],
            a[1] * xi[0] - a[0] * xi[1],
        ])
    }

    /// Bilinear `self x other` (no conjugation).
    #[inline]
    pub fn cross(&self, other: &CVec3) -> CVec3 {
        let (a, b) = (&self.0, &other.0);
        CVec3([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    /// `xi . self` for a real vector `xi`.
    #[inline]
    pub fn dot_real(&self, xi: &[f64; 3]) -> Complex64 {
        self.0[0] * xi[0] + self.0[1] * xi[1] + self.0[2] * xi[2]
    }

    /// Hermitian inner product `sum conj(self_i) other_i`.
    #[inline]
    pub fn inner(&self, other: &CVec3) -> Complex64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1] + self.0[2].conj() * other.0[2]
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr() + self.0[2].norm_sqr()
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        math::sqrt(self.norm_sqr())
    }

    /// Component along `xi`: `xi (xi . self) / |xi|^2`. Zero for `xi = 0`.
    #[inline]
    pub fn parallel_to(&self, xi: &[f64; 3]) -> CVec3 {
        let k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if k2 == 0.0 {
            return CVec3::ZERO;
        }
        let c = self.dot_real(xi) / k2;
        CVec3([c * xi[0], c * xi[1], c * xi[2]])
    }

    /// Component orthogonal to `xi` (Leray projection of one mode).
    #[inline]
    pub fn transverse_to(&self, xi: &[f64; 3]) -> CVec3 {
        *self - self.parallel_to(xi)
    }

    pub fn conj(&self) -> CVec3 {
        CVec3([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    #[inline]
    fn add(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for CVec3 {
    #[inline]
    fn add_assign(&mut self, o: CVec3) {
        for i in 0..3 {
            self.0[i] += o.0[i];
        }
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    #[inline]
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    #[inline]
    fn neg(self) -> CVec3 {
        CVec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<Complex64> for CVec3 {
    type Output = CVec3;
    #[inline]
    fn mul(self, c: Complex64) -> CVec3 {
        CVec3([self.0[0] * c, self.0[1] * c, self.0[2] * c])
    }
}

impl Mul<f64> for CVec3 {
    type Output = CVec3;
    #[inline]
    fn mul(self, c: f64) -> CVec3 {
        CVec3([self.0[0] * c, self.0[1] * c, self.0[2] * c])
    }
}

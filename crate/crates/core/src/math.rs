//! Scalar math that works without `std`.

use num_complex::Complex64;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `exp(z)` for complex `z`.
#[inline]
pub fn cexp(z: Complex64) -> Complex64 {
    let r = libm::exp(z.re);
    Complex64::new(r * libm::cos(z.im), r * libm::sin(z.im))
}

/// `exp(z) - 1` for complex `z`, accurate for small `|z|`.
///
/// Real part uses `expm1(x) cos y - 2 sin^2(y/2)` so neither term cancels
/// against the subtracted one.
#[inline]
pub fn cexpm1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if y == 0.0 {
        return Complex64::new(libm::expm1(x), 0.0);
    }
    let half = libm::sin(0.5 * y);
    let re = libm::expm1(x) * libm::cos(y) - 2.0 * half * half;
    let im = libm::exp(x) * libm::sin(y);
    Complex64::new(re, im)
}

/// Pairwise (cascade) summation with a fixed split order.
///
/// The result depends only on the input order, never on how a caller
/// chunks the work.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        let mut acc = 0.0;
        for v in values {
            acc += *v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

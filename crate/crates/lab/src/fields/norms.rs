use num_complex::Complex64;
use nsm_core::math::pairwise_sum;

use super::{Grid, SpectralField};

/// Parseval factor `(2pi)^3 / n^6`.
pub(crate) fn parseval(grid: &Grid) -> f64 {
    let l = 2.0 * std::f64::consts::PI;
    let len = grid.len() as f64;
    l * l * l / (len * len)
}

pub(crate) fn coeff_sq_sum(c: &[Complex64]) -> f64 {
    let sq: Vec<f64> = c.iter().map(|v| v.norm_sqr()).collect();
    pairwise_sum(&sq)
}

/// `||a - b||_{L^2}` without forming the difference field.
pub fn l2_distance(a: &SpectralField, b: &SpectralField) -> f64 {
    let len = a.grid.len();
    let sq: Vec<f64> = (0..len)
        .map(|i| (0..3).map(|c| (a.comps[c][i] - b.comps[c][i]).norm_sqr()).sum())
        .collect();
    (parseval(&a.grid) * pairwise_sum(&sq)).sqrt()
}

/// Continuous `L^2(T^3)` norm.
pub fn l2_norm(f: &SpectralField) -> f64 {
    let sq: f64 = f.comps.iter().map(|c| coeff_sq_sum(c)).sum();
    (parseval(&f.grid) * sq).sqrt()
}

/// Homogeneous Sobolev norm `|| |xi|^sigma f ||_{L^2}`.
pub fn hdot_norm(f: &SpectralField, sigma: f64) -> f64 {
    let sq: Vec<f64> = (0..f.grid.len())
        .map(|idx| {
            let k2 = f.grid.k2(idx);
            if k2 == 0.0 {
                0.0
            } else {
                k2.powf(sigma) * f.mode(idx).norm_sqr()
            }
        })
        .collect();
    (parseval(&f.grid) * pairwise_sum(&sq)).sqrt()
}

/// Real `L^2` pairing `int a . b dx`.
pub fn inner_product(a: &SpectralField, b: &SpectralField) -> f64 {
    let terms: Vec<f64> = (0..a.grid.len()).map(|idx| a.mode(idx).inner(&b.mode(idx)).re).collect();
    parseval(&a.grid) * pairwise_sum(&terms)
}

/// `1/2 (||u||^2 + ||B||^2 + gamma^2 ||E||^2)`.
pub fn energy(u: &SpectralField, b: &SpectralField, e: &SpectralField, gamma: f64) -> f64 {
    let nu = l2_norm(u);
    let nb = l2_norm(b);
    let ne = l2_norm(e);
    0.5 * (nu * nu + nb * nb + gamma * gamma * ne * ne)
}

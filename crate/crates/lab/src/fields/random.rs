//! Seeded band-limited random fields.

use num_complex::Complex64;
use rand::Rng;

use super::{leray_project, norms::l2_norm, Grid, SpectralField};

/// A real vector field with independent random coefficients on
/// `max |xi_i| <= kmax`, rescaled to `L^2` norm `amplitude`.
pub fn band_limited<R: Rng>(grid: &Grid, kmax: i64, amplitude: f64, rng: &mut R) -> SpectralField {
    let mut f = SpectralField::zeros(grid);
    for idx in 0..grid.len() {
        let w = grid.integer_wavevector(idx);
        if w.iter().all(|c| c.abs() <= kmax) && idx != 0 {
            for c in 0..3 {
                f.comps[c][idx] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
    }
    // Taking the real part symmetrizes the spectrum.
    let phys = f.to_physical();
    let mut f = SpectralField::from_physical(grid, &phys);
    let norm = l2_norm(&f);
    if norm > 0.0 {
        f.scale_in_place(amplitude / norm);
    }
    f
}

/// [`band_limited`] followed by the Leray projection and renormalization.
pub fn solenoidal<R: Rng>(grid: &Grid, kmax: i64, amplitude: f64, rng: &mut R) -> SpectralField {
    let mut f = leray_project(&band_limited(grid, kmax, 1.0, rng));
    let norm = l2_norm(&f);
    if norm > 0.0 {
        f.scale_in_place(amplitude / norm);
    }
    f
}

use num_complex::Complex64;
use nsm_core::{Band, BandSpec, BandThresholds, CVec3};

use super::{norms, FieldError, Grid, ScalarField, SpectralField};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
fn odd_wavevector(grid: &Grid, idx: usize) -> [f64; 3] {
    grid.odd_wavevectors()[idx]
}

/// Leray projection `f - xi (xi . f)/|xi|^2`; the mean mode is kept.
pub fn leray_project(f: &SpectralField) -> SpectralField {
    let mut out = f.clone();
    leray_project_in_place(&mut out);
    out
}

pub fn leray_project_in_place(f: &mut SpectralField) {
    let xis = f.grid.wavevectors();
    let k2 = f.grid.k2_all();
    let [c0, c1, c2] = &mut f.comps;
    for idx in 1..xis.len() {
        let xi = xis[idx];
        let d = (c0[idx] * xi[0] + c1[idx] * xi[1] + c2[idx] * xi[2]) / k2[idx];
        c0[idx] -= d * xi[0];
        c1[idx] -= d * xi[1];
        c2[idx] -= d * xi[2];
    }
    f.div_free = true;
}

pub fn curl(f: &SpectralField) -> SpectralField {
    let mut out = SpectralField::zeros(&f.grid);
    for idx in 0..f.grid.len() {
        let xi = odd_wavevector(&f.grid, idx);
        out.set_mode(idx, f.mode(idx).crossed_by(&xi) * I);
    }
    out.div_free = true;
    out
}

pub fn div(f: &SpectralField) -> ScalarField {
    let mut out = ScalarField::zeros(&f.grid);
    for idx in 0..f.grid.len() {
        let xi = odd_wavevector(&f.grid, idx);
        out.coeffs[idx] = I * f.mode(idx).dot_real(&xi);
    }
    out
}

pub fn grad(f: &ScalarField) -> SpectralField {
    let mut out = SpectralField::zeros(&f.grid);
    for idx in 0..f.grid.len() {
        let xi = odd_wavevector(&f.grid, idx);
        let c = I * f.coeffs[idx];
        out.set_mode(idx, CVec3::new(c * xi[0], c * xi[1], c * xi[2]));
    }
    out.div_free = false;
    out
}

/// `Delta f` (multiplication by `-|xi|^2`).
pub fn laplacian(f: &SpectralField) -> SpectralField {
    let mut out = f.clone();
    for c in 0..3 {
        for (idx, v) in out.comps[c].iter_mut().enumerate() {
            *v *= -f.grid.k2(idx);
        }
    }
    out
}

/// Physical samples of `f` after truncation to the dealiasing cube; reuse
/// with [`cross_physical`] when one factor is fixed across many products.
/// `f` must hold the spectrum of a real field.
pub fn masked_physical(f: &SpectralField) -> [Vec<f64>; 3] {
    let (p0, p1) = f.grid.inverse_masked_pair(&f.comps[0], &f.comps[1]);
    [p0, p1, f.grid.inverse_masked(&f.comps[2])]
}

fn masked_forward(grid: &Grid, values: [Vec<f64>; 3]) -> SpectralField {
    let (f0, f1) = grid.forward_masked_pair(&values[0], &values[1]);
    let f2 = grid.forward_masked(&values[2]);
    SpectralField { grid: grid.clone(), comps: [f0, f1, f2], div_free: false }
}

/// Pseudo-spectral `a x b` with inputs and output truncated to the
/// dealiasing cube.
pub fn dealiased_cross(a: &SpectralField, b: &SpectralField) -> Result<SpectralField, FieldError> {
    a.same_grid(b)?;
    let pb = masked_physical(b);
    Ok(cross_physical(a, &pb))
}

/// [`dealiased_cross`] with the second factor already in the form returned
/// by [`masked_physical`].
pub fn cross_physical(a: &SpectralField, pb: &[Vec<f64>; 3]) -> SpectralField {
    let pa = masked_physical(a);
    let len = a.grid.len();
    let mut out = [vec![0.0; len], vec![0.0; len], vec![0.0; len]];
    for i in 0..len {
        out[0][i] = pa[1][i] * pb[2][i] - pa[2][i] * pb[1][i];
        out[1][i] = pa[2][i] * pb[0][i] - pa[0][i] * pb[2][i];
        out[2][i] = pa[0][i] * pb[1][i] - pa[1][i] * pb[0][i];
    }
    masked_forward(&a.grid, out)
}

/// A rank-2 tensor field, `t[i][j]` in spectral representation.
#[derive(Debug, Clone)]
pub struct TensorField {
    pub grid: Grid,
    pub comps: [[Vec<Complex64>; 3]; 3],
}

impl TensorField {
    /// Continuous `L^2` norm (Frobenius pointwise).
    pub fn l2_norm(&self) -> f64 {
        let sq: f64 = self.comps.iter().flatten().map(|c| norms::coeff_sq_sum(c)).sum();
        (norms::parseval(&self.grid) * sq).sqrt()
    }

    /// Full gradient `d_k t_ij` as 27 physical-space component arrays.
    pub fn gradient_physical(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(27);
        for row in &self.comps {
            for c in row {
                for k in 0..3 {
                    let mut buf: Vec<Complex64> = c
                        .iter()
                        .enumerate()
                        .map(|(idx, v)| I * *v * odd_wavevector(&self.grid, idx)[k])
                        .collect();
                    self.grid.inverse(&mut buf);
                    out.push(buf.into_iter().map(|v| v.re).collect());
                }
            }
        }
        out
    }
}

/// Pseudo-spectral `u (x) v` with the same truncation as [`dealiased_cross`].
pub fn dealiased_outer(u: &SpectralField, v: &SpectralField) -> Result<TensorField, FieldError> {
    u.same_grid(v)?;
    let pu = masked_physical(u);
    let pv = masked_physical(v);
    let grid = &u.grid;
    let products: Vec<Vec<f64>> = (0..9)
        .map(|k| pu[k / 3].iter().zip(&pv[k % 3]).map(|(a, b)| a * b).collect())
        .collect();
    let mut spectra: Vec<Vec<Complex64>> = Vec::with_capacity(9);
    for pair in products.chunks(2) {
        if let [x, y] = pair {
            let (fx, fy) = grid.forward_masked_pair(x, y);
            spectra.push(fx);
            spectra.push(fy);
        } else {
            spectra.push(grid.forward_masked(&pair[0]));
        }
    }
    let mut it = spectra.into_iter();
    let comps = [0, 1, 2].map(|_| [0, 1, 2].map(|_| it.next().expect("nine components")));
    Ok(TensorField { grid: grid.clone(), comps })
}

/// Row divergence `(div T)_i = d_j T_ij`.
pub fn div_tensor(t: &TensorField) -> SpectralField {
    let mut out = SpectralField::zeros(&t.grid);
    for idx in 0..t.grid.len() {
        let xi = odd_wavevector(&t.grid, idx);
        for i in 0..3 {
            let s = t.comps[i][0][idx] * xi[0] + t.comps[i][1][idx] * xi[1] + t.comps[i][2][idx] * xi[2];
            out.comps[i][idx] = I * s;
        }
    }
    out.div_free = false;
    out
}

fn check_thresholds(t: &BandThresholds) -> Result<(), FieldError> {
    if t.0.windows(2).all(|w| w[0] <= w[1]) && t.0.iter().all(|v| !v.is_nan()) {
        Ok(())
    } else {
        Err(FieldError::NonMonotoneThresholds(t.0))
    }
}

/// Restriction of `f` to one frequency band. Thresholds must be
/// non-decreasing (use [`BandSpec::clamped`] for disordered parameter sets).
pub fn band_filter(f: &SpectralField, thresholds: &BandThresholds, band: Band) -> Result<SpectralField, FieldError> {
    check_thresholds(thresholds)?;
    let mut out = f.clone();
    for idx in 0..f.grid.len() {
        if BandSpec::classify_with(thresholds, f.grid.k2(idx).sqrt()) != band {
            out.set_mode(idx, CVec3::ZERO);
        }
    }
    Ok(out)
}

/// `L^2` norm of `f` restricted to each of the five bands, in band order.
pub fn band_norms(f: &SpectralField, thresholds: &BandThresholds) -> Result<[f64; 5], FieldError> {
    check_thresholds(thresholds)?;
    let mut buckets: [Vec<f64>; 5] = Default::default();
    for idx in 0..f.grid.len() {
        let b = BandSpec::classify_with(thresholds, f.grid.k2(idx).sqrt());
        buckets[b.index()].push(f.mode(idx).norm_sqr());
    }
    let scale = norms::parseval(&f.grid);
    Ok(buckets.map(|v| (scale * nsm_core::math::pairwise_sum(&v)).sqrt()))
}

//! Generalized Ohm's law: recover the divergence-free current from
//! `(u, B, E)` via
//!
//! ```text
//! (1/eta)(E + u x B) - beta eta j + grad p_e = j x B,   div j = 0.
//! ```
//!
//! Projecting out `grad p_e` leaves the affine fixed-point problem
//! `beta eta j = P[(1/eta)(E + u x B) - j x B]`, a contraction in `L^2`
//! whenever `||B||_inf < beta eta`.

use num_complex::Complex64;
use nsm_core::PhysParams;
use thiserror::Error;

use crate::fields::{
    cross_physical, dealiased_cross, l2_distance, l2_norm, leray_project, leray_project_in_place, masked_physical, FieldError, ScalarField, SpectralField,
};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Debug, Error)]
pub enum OhmError {
    #[error(
        "Ohm iteration did not converge in {iterations} iterations (last step {last_distance:.3e}, \
         contraction estimate ||B||_inf/(beta eta) = {contraction_estimate:.3})"
    )]
    NonConvergence { iterations: usize, last_distance: f64, contraction_estimate: f64 },
    #[error("non-finite value in Ohm iteration {iteration}")]
    NotFinite { iteration: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone)]
pub struct OhmSolveReport {
    pub j: SpectralField,
    /// Number of fixed-point updates applied after the initial guess.
    pub iterations: usize,
    /// `|| beta eta j + P(j x B) - (1/eta) P(E + u x B) ||_{L^2}`.
    pub residual: f64,
    /// `||B||_inf / (beta eta)`, with `||B||_inf` taken over the grid
    /// samples of the dealiased field.
    pub contraction_estimate: f64,
    /// `L^2` distance between successive iterates.
    pub distances: Vec<f64>,
}

impl OhmSolveReport {
    /// Largest ratio of successive iterate distances, ignoring steps that
    /// are already at the round-off floor `floor`.
    pub fn measured_ratio(&self, floor: f64) -> f64 {
        self.distances
            .windows(2)
            .filter(|w| w[0] > floor && w[1] > floor)
            .map(|w| w[1] / w[0])
            .fold(0.0, f64::max)
    }
}

/// `(1/eta) P(E + u x B)`.
fn ohm_forcing(u: &SpectralField, b: &SpectralField, e: &SpectralField, p: &PhysParams) -> Result<SpectralField, FieldError> {
    let uxb = dealiased_cross(u, b)?;
    Ok(leray_project(&e.add(&uxb)).scale(1.0 / p.eta))
}

fn max_magnitude(v: &[Vec<f64>; 3]) -> f64 {
    (0..v[0].len())
        .map(|i| (v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i]).sqrt())
        .fold(0.0, f64::max)
}

pub fn solve_ohm(
    u: &SpectralField,
    b: &SpectralField,
    e: &SpectralField,
    p: &PhysParams,
    tol: f64,
    max_iter: usize,
) -> Result<OhmSolveReport, OhmError> {
    u.same_grid(b)?;
    u.same_grid(e)?;
    let beta_eta = p.beta * p.eta;
    let pb = masked_physical(b);
    let contraction_estimate = max_magnitude(&pb) / beta_eta;
    let forcing = ohm_forcing(u, b, e, p)?;

    let apply = |j: &SpectralField| -> SpectralField {
        let mut next = cross_physical(j, &pb);
        leray_project_in_place(&mut next);
        next.scale_in_place(-1.0);
        next.axpy_in_place(1.0, &forcing);
        next.scale_in_place(1.0 / beta_eta);
        next
    };

    let mut j = forcing.scale(1.0 / beta_eta);
    let mut distances = Vec::new();
    let mut iterations = 0;
    loop {
        if iterations == max_iter {
            return Err(OhmError::NonConvergence {
                iterations,
                last_distance: distances.last().copied().unwrap_or(f64::NAN),
                contraction_estimate,
            });
        }
        let next = apply(&j);
        iterations += 1;
        let d = l2_distance(&next, &j);
        if !d.is_finite() {
            return Err(OhmError::NotFinite { iteration: iterations });
        }
        distances.push(d);
        j = next;
        if d < tol {
            break;
        }
    }
    j.div_free = true;
    let residual = l2_norm(&projected_residual_with(&j, &forcing, &pb, p));
    Ok(OhmSolveReport { j, iterations, residual, contraction_estimate, distances })
}

fn projected_residual_with(
    j: &SpectralField,
    forcing: &SpectralField,
    pb: &[Vec<f64>; 3],
    p: &PhysParams,
) -> SpectralField {
    let jxb = leray_project(&cross_physical(j, pb));
    j.scale(p.beta * p.eta).add(&jxb).sub(forcing)
}

/// `beta eta j + P(j x B) - (1/eta) P(E + u x B)` for an arbitrary `j`.
pub fn projected_residual(
    j: &SpectralField,
    u: &SpectralField,
    b: &SpectralField,
    e: &SpectralField,
    p: &PhysParams,
) -> Result<SpectralField, FieldError> {
    let forcing = ohm_forcing(u, b, e, p)?;
    Ok(projected_residual_with(j, &forcing, &masked_physical(b), p))
}

/// Electron pressure `p_e`, the scalar potential of the unprojected Ohm
/// residual `j x B + beta eta j - (1/eta)(E + u x B)`. Diagnostic only.
pub fn electron_pressure(
    j: &SpectralField,
    u: &SpectralField,
    b: &SpectralField,
    e: &SpectralField,
    p: &PhysParams,
) -> Result<ScalarField, FieldError> {
    let jxb = dealiased_cross(j, b)?;
    let uxb = dealiased_cross(u, b)?;
    let g = jxb.add(&j.scale(p.beta * p.eta)).sub(&e.add(&uxb).scale(1.0 / p.eta));
    let mut out = ScalarField::zeros(&j.grid);
    let i = Complex64::new(0.0, 1.0);
    for idx in 1..j.grid.len() {
        let xi = j.grid.wavevector(idx);
        out.coeffs[idx] = -i * g.mode(idx).dot_real(&xi) / j.grid.k2(idx);
    }
    Ok(out)
}

/// Divergence-free part of the limiting electric field,
/// `P(-u x B + beta eta^2 j + eta j x B)`.
pub fn electric_field_closure(
    u: &SpectralField,
    b: &SpectralField,
    j: &SpectralField,
    p: &PhysParams,
) -> Result<SpectralField, FieldError> {
    let uxb = dealiased_cross(u, b)?;
    let jxb = dealiased_cross(j, b)?;
    let sum = j.scale(p.beta_eta2()).sub(&uxb).add(&jxb.scale(p.eta));
    Ok(leray_project(&sum))
}

//! Time integration of Hall-MHD with viscosity 1, resistivity
//! `beta eta^2` and Hall coefficient `eta`:
//!
//! ```text
//! d_t u + div(u (x) u) - Delta u + grad p = (curl B) x B
//! d_t B + eta curl((curl B) x B) - curl(u x B) = beta eta^2 Delta B
//! ```
//!
//! Same integrating-factor Heun scheme as the NSM solver, with exact heat
//! factors for both diffusions.

use num_complex::Complex64;
use nsm_core::PhysParams;
use thiserror::Error;

use crate::fields::{
    curl, dealiased_cross, dealiased_outer, div_tensor, hdot_norm, l2_norm, leray_project, FieldError, Grid,
    SpectralField,
};
use crate::ledger::{magnetic_band_norms, LedgerRow, Schedule, ScheduleError};
use crate::nsm_solver::{Probe, StepConfig};

/// Whistler CFL constant `c` in `dt <= c dx^2 / (eta ||B||_inf)`.
pub const WHISTLER_CFL: f64 = 0.5;

#[derive(Debug, Error)]
pub enum HallError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("dt = {dt:.6e} exceeds the {kind} bound {bound:.6e}")]
    StepTooLarge { kind: &'static str, dt: f64, bound: f64 },
    #[error("non-finite state after step {step} (t = {time:.6e})")]
    NotFinite { step: usize, time: f64 },
}

#[derive(Debug, Clone)]
pub struct HallState {
    pub time: f64,
    pub u: SpectralField,
    pub b: SpectralField,
    pub params: PhysParams,
}

impl HallState {
    pub fn new(u: SpectralField, b: SpectralField, params: PhysParams) -> Result<Self, FieldError> {
        u.same_grid(&b)?;
        Ok(HallState { time: 0.0, u, b, params })
    }

    pub fn grid(&self) -> &Grid {
        &self.u.grid
    }

    /// `1/2 (||u||^2 + ||B||^2)`.
    pub fn energy(&self) -> f64 {
        let nu = l2_norm(&self.u);
        let nb = l2_norm(&self.b);
        0.5 * (nu * nu + nb * nb)
    }
}

/// `eta curl((curl B) x B)`.
pub fn hall_term(b: &SpectralField, eta: f64) -> Result<SpectralField, FieldError> {
    let jxb = dealiased_cross(&curl(b), b)?;
    Ok(curl(&jxb).scale(eta))
}

/// Nonlinear right-hand side `(du, dB)`; diffusion is excluded.
pub fn hall_rhs(state: &HallState) -> Result<(SpectralField, SpectralField), FieldError> {
    rhs_parts(&state.u, &state.b, &state.params)
}

fn rhs_parts(u: &SpectralField, b: &SpectralField, p: &PhysParams) -> Result<(SpectralField, SpectralField), FieldError> {
    let j = curl(b);
    let jxb = dealiased_cross(&j, b)?;
    let adv = div_tensor(&dealiased_outer(u, u)?);
    let mut du = leray_project(&jxb.sub(&adv));
    for c in 0..3 {
        du.comps[c][0] = Complex64::new(0.0, 0.0);
    }
    let uxb = dealiased_cross(u, b)?;
    let mut db = curl(&uxb).sub(&curl(&jxb).scale(p.eta));
    db.div_free = true;
    Ok((du, db))
}

/// `cfl_safety * min(dx/||u||_inf, c dx^2/(eta ||B||_inf))`.
pub fn hall_step_bounds(state: &HallState, cfl_safety: f64) -> [(&'static str, f64); 2] {
    let dx = state.grid().spacing();
    let umax = state.u.linf_norm();
    let bmax = state.b.linf_norm();
    let adv = if umax > 0.0 { dx / umax } else { f64::INFINITY };
    let whistler = if bmax > 0.0 { WHISTLER_CFL * dx * dx / (state.params.eta * bmax) } else { f64::INFINITY };
    [("advective CFL", cfl_safety * adv), ("whistler", cfl_safety * whistler)]
}

pub fn check_hall_step(state: &HallState, cfg: &StepConfig) -> Result<(), HallError> {
    if !cfg.nonlinear {
        return Ok(());
    }
    for (kind, bound) in hall_step_bounds(state, cfg.cfl_safety) {
        if cfg.dt > bound * (1.0 + 1e-12) {
            return Err(HallError::StepTooLarge { kind, dt: cfg.dt, bound });
        }
    }
    Ok(())
}

pub struct HallStepper {
    cfg: StepConfig,
    params: PhysParams,
    viscous: Vec<f64>,
    resistive: Vec<f64>,
}

fn apply_factors(f: &mut SpectralField, factors: &[f64]) {
    for c in 0..3 {
        for (v, k) in f.comps[c].iter_mut().zip(factors) {
            *v *= *k;
        }
    }
}

impl HallStepper {
    pub fn new(grid: &Grid, params: PhysParams, cfg: StepConfig) -> Self {
        let h = cfg.dt;
        let r = params.beta_eta2();
        let viscous = grid.k2_all().iter().map(|k2| (-k2 * h).exp()).collect();
        let resistive = grid.k2_all().iter().map(|k2| (-r * k2 * h).exp()).collect();
        HallStepper { cfg, params, viscous, resistive }
    }

    fn linear(&self, u: &mut SpectralField, b: &mut SpectralField) {
        apply_factors(u, &self.viscous);
        apply_factors(b, &self.resistive);
    }

    pub fn step(&self, state: &HallState) -> Result<HallState, FieldError> {
        let h = self.cfg.dt;
        let p = &self.params;
        let mut u = state.u.clone();
        let mut b = state.b.clone();
        if !self.cfg.nonlinear {
            self.linear(&mut u, &mut b);
            return Ok(HallState { time: state.time + h, u, b, params: *p });
        }
        let (du0, db0) = rhs_parts(&state.u, &state.b, p)?;
        let mut us = u.axpy(h, &du0);
        let mut bs = b.axpy(h, &db0);
        self.linear(&mut us, &mut bs);
        let (du1, db1) = rhs_parts(&us, &bs, p)?;

        u.axpy_in_place(0.5 * h, &du0);
        b.axpy_in_place(0.5 * h, &db0);
        self.linear(&mut u, &mut b);
        u.axpy_in_place(0.5 * h, &du1);
        b.axpy_in_place(0.5 * h, &db1);
        u.div_free = true;
        b.div_free = true;
        Ok(HallState { time: state.time + h, u, b, params: *p })
    }
}

pub fn step_hall(state: &HallState, cfg: &StepConfig) -> Result<HallState, HallError> {
    check_hall_step(state, cfg)?;
    Ok(HallStepper::new(state.grid(), state.params, *cfg).step(state)?)
}

#[derive(Debug, Clone)]
pub struct HallRun {
    pub final_state: HallState,
    pub ledger: Vec<LedgerRow>,
    /// Largest `|div|` of `(u, B, -, curl B)` over all probes.
    pub max_divergence: [f64; 4],
    pub steps: usize,
}

pub fn hall_ledger_row(state: &HallState, j: &SpectralField) -> Result<LedgerRow, FieldError> {
    let p = &state.params;
    let jn = l2_norm(j);
    let gu = hdot_norm(&state.u, 1.0);
    Ok(LedgerRow {
        t: state.time,
        energy: state.energy(),
        grad_u_sq: gu * gu,
        joule: p.beta_eta2() * jn * jn,
        divu_max: state.u.max_divergence(),
        div_b_max: state.b.max_divergence(),
        bands: magnetic_band_norms(&state.b, p)?,
        ohm_iters: 0,
        ohm_residual: 0.0,
    })
}

pub fn run_hall(
    initial: HallState,
    horizon: f64,
    cfg: &StepConfig,
    probe_interval: f64,
    hook: &mut dyn FnMut(&Probe),
) -> Result<HallRun, HallError> {
    let schedule = Schedule::new(cfg.dt, horizon, probe_interval)?;
    check_hall_step(&initial, cfg)?;
    let stepper = HallStepper::new(initial.grid(), initial.params, *cfg);
    let t0 = initial.time;
    let mut state = initial;
    let mut ledger = Vec::with_capacity(schedule.probe_count());
    let mut max_div = [0.0f64; 4];

    let mut record = |state: &HallState, ledger: &mut Vec<LedgerRow>| -> Result<(), HallError> {
        let j = curl(&state.b);
        let row = hall_ledger_row(state, &j)?;
        let divs = [row.divu_max, row.div_b_max, 0.0, j.max_divergence()];
        for (m, d) in max_div.iter_mut().zip(divs) {
            *m = m.max(d);
        }
        hook(&Probe { index: ledger.len(), time: state.time, u: &state.u, b: &state.b, e: None, j: &j, row: &row });
        ledger.push(row);
        Ok(())
    };

    record(&state, &mut ledger)?;
    for k in 1..=schedule.steps {
        let mut next = stepper.step(&state)?;
        next.time = schedule.time_of(t0, k);
        if !next.energy().is_finite() {
            return Err(HallError::NotFinite { step: k, time: next.time });
        }
        state = next;
        if k % schedule.probe_every == 0 {
            record(&state, &mut ledger)?;
        }
    }
    Ok(HallRun { final_state: state, ledger, max_divergence: max_div, steps: schedule.steps })
}

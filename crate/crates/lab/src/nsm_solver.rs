//! Time integration of the Navier-Stokes-Maxwell system with generalized
//! Ohm's law,
//!
//! ```text
//! d_t u + div(u (x) u) - Delta u + grad p = j x B
//! gamma^2 d_t E - curl B = -j
//! d_t B + curl E = 0
//! ```
//!
//! with `j` from [`crate::ohm_closure`]. The electric field is stored in
//! physical units; stepping works with `E~ = gamma E`, for which the
//! linear `(E~, B)` block is exactly the per-mode Maxwell symbol and is
//! propagated in closed form. Nonlinear terms enter through an
//! integrating-factor Heun step:
//!
//! ```text
//! Y*      = e^{L h} (Y_n + h N(Y_n))
//! Y_{n+1} = e^{L h} (Y_n + h/2 N(Y_n)) + h/2 N(Y*)
//! ```

use nsm_core::{ModePair, ModePropagator, PhysParams, SpectralError, Wavevector};
use thiserror::Error;

use crate::fields::{
    dealiased_cross, dealiased_outer, div_tensor, energy, hdot_norm, l2_norm, leray_project, FieldError, Grid,
    SpectralField,
};
use crate::ledger::{magnetic_band_norms, LedgerRow, Schedule, ScheduleError};
use crate::ohm_closure::{solve_ohm, OhmError, OhmSolveReport, DEFAULT_MAX_ITER, DEFAULT_TOL};

pub const DEFAULT_CFL_SAFETY: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    EtdHeun,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepConfig {
    pub dt: f64,
    pub scheme: Scheme,
    pub cfl_safety: f64,
    pub ohm_tol: f64,
    pub ohm_max_iter: usize,
    /// When false, only the linear propagators act (diagnostic mode).
    pub nonlinear: bool,
}

impl StepConfig {
    pub fn new(dt: f64) -> Self {
        StepConfig {
            dt,
            scheme: Scheme::EtdHeun,
            cfl_safety: DEFAULT_CFL_SAFETY,
            ohm_tol: DEFAULT_TOL,
            ohm_max_iter: DEFAULT_MAX_ITER,
            nonlinear: true,
        }
    }

    pub fn linear_only(dt: f64) -> Self {
        StepConfig { nonlinear: false, ..Self::new(dt) }
    }
}

#[derive(Debug, Error)]
pub enum NsmError {
    #[error(transparent)]
    Ohm(#[from] OhmError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("dt = {dt:.6e} exceeds the {kind} bound {bound:.6e}")]
    StepTooLarge { kind: &'static str, dt: f64, bound: f64 },
    #[error("non-finite state after step {step} (t = {time:.6e}, energy = {energy:.6e})")]
    NotFinite { step: usize, time: f64, energy: f64 },
}

#[derive(Debug, Clone)]
pub struct NsmState {
    pub time: f64,
    pub u: SpectralField,
    pub e: SpectralField,
    pub b: SpectralField,
    pub params: PhysParams,
}

impl NsmState {
    pub fn new(u: SpectralField, e: SpectralField, b: SpectralField, params: PhysParams) -> Result<Self, FieldError> {
        u.same_grid(&e)?;
        u.same_grid(&b)?;
        Ok(NsmState { time: 0.0, u, e, b, params })
    }

    pub fn zeros(grid: &Grid, params: PhysParams) -> Self {
        let z = SpectralField::zeros(grid);
        NsmState { time: 0.0, u: z.clone(), e: z.clone(), b: z, params }
    }

    pub fn grid(&self) -> &Grid {
        &self.u.grid
    }

    pub fn energy(&self) -> f64 {
        energy(&self.u, &self.b, &self.e, self.params.gamma)
    }
}

/// Nonlinear right-hand side in physical units.
#[derive(Debug, Clone)]
pub struct NsmRhs {
    /// `P[-div(u (x) u) + j x B]` with the mean mode removed.
    pub du: SpectralField,
    /// `-(1/gamma^2)(j - P E/(beta eta^2))`.
    pub de_source: SpectralField,
    /// Identically zero: Faraday's law is linear.
    pub db_source: SpectralField,
    pub ohm: OhmSolveReport,
}

fn nonlinear_terms(
    u: &SpectralField,
    e: &SpectralField,
    b: &SpectralField,
    p: &PhysParams,
    cfg: &StepConfig,
) -> Result<NsmRhs, NsmError> {
    let ohm = solve_ohm(u, b, e, p, cfg.ohm_tol, cfg.ohm_max_iter)?;
    let uxb = dealiased_cross(u, b)?;
    let jxb = dealiased_cross(&ohm.j, b)?;
    let adv = div_tensor(&dealiased_outer(u, u)?);
    let mut du = leray_project(&jxb.sub(&adv));
    // The mean momentum forcing is balanced by a uniform pressure gradient.
    for c in 0..3 {
        du.comps[c][0] = num_complex::Complex64::new(0.0, 0.0);
    }
    // j - P E/(beta eta^2) = (1/(beta eta^2)) P(u x B) - (1/(beta eta)) P(j x B),
    // evaluated in the right-hand form to avoid cancelling O(1) terms.
    let g2 = p.gamma * p.gamma;
    let remainder = leray_project(&uxb.scale(1.0 / p.beta_eta2()).sub(&jxb.scale(1.0 / (p.beta * p.eta))));
    let de_source = remainder.scale(-1.0 / g2);
    Ok(NsmRhs { du, de_source, db_source: SpectralField::zeros(&u.grid), ohm })
}

pub fn nsm_rhs_nonlinear(state: &NsmState, cfg: &StepConfig) -> Result<NsmRhs, NsmError> {
    nonlinear_terms(&state.u, &state.e, &state.b, &state.params, cfg)
}

/// Exact propagator of the linear part for a fixed step.
pub struct LinearStep {
    h: f64,
    viscous: Vec<f64>,
    maxwell: Vec<ModePropagator>,
}

impl LinearStep {
    pub fn new(grid: &Grid, p: &PhysParams, h: f64) -> Result<LinearStep, NsmError> {
        let viscous = grid.k2_all().iter().map(|k2| (-k2 * h).exp()).collect();
        let maxwell = (0..grid.len())
            .map(|idx| ModePropagator::new(&Wavevector { xi: grid.wavevector(idx) }, p, h))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearStep { h, viscous, maxwell })
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    /// Apply in place to `(u, E~, B)`.
    pub fn apply(&self, u: &mut SpectralField, et: &mut SpectralField, b: &mut SpectralField) {
        for c in 0..3 {
            for (v, f) in u.comps[c].iter_mut().zip(&self.viscous) {
                *v *= *f;
            }
        }
        for (idx, prop) in self.maxwell.iter().enumerate() {
            let out = prop.apply(&ModePair { e: et.mode(idx), b: b.mode(idx) });
            et.set_mode(idx, out.e);
            b.set_mode(idx, out.b);
        }
    }
}

/// Largest admissible step for the current state:
/// `cfl_safety * min(dx/||u||_inf, beta eta^2 gamma^2/(1 + ||B||_inf))`.
pub fn step_bounds(state: &NsmState, cfl_safety: f64) -> [(&'static str, f64); 2] {
    let p = &state.params;
    let umax = state.u.linf_norm();
    let bmax = state.b.linf_norm();
    let adv = if umax > 0.0 { state.grid().spacing() / umax } else { f64::INFINITY };
    let stiff = p.beta_eta2() * p.gamma * p.gamma / (1.0 + bmax);
    [("advective CFL", cfl_safety * adv), ("stiffness", cfl_safety * stiff)]
}

pub fn check_step(state: &NsmState, cfg: &StepConfig) -> Result<(), NsmError> {
    if !cfg.nonlinear {
        return Ok(());
    }
    for (kind, bound) in step_bounds(state, cfg.cfl_safety) {
        if cfg.dt > bound * (1.0 + 1e-12) {
            return Err(NsmError::StepTooLarge { kind, dt: cfg.dt, bound });
        }
    }
    Ok(())
}

/// A reusable stepper holding the linear propagator for `cfg.dt`.
pub struct NsmStepper {
    cfg: StepConfig,
    params: PhysParams,
    linear: LinearStep,
}

impl NsmStepper {
    pub fn new(grid: &Grid, params: PhysParams, cfg: StepConfig) -> Result<Self, NsmError> {
        Ok(NsmStepper { linear: LinearStep::new(grid, &params, cfg.dt)?, params, cfg })
    }

    /// One step; returns the Ohm report of the first stage (the current at
    /// the start of the step).
    pub fn step(&self, state: &NsmState) -> Result<(NsmState, Option<OhmSolveReport>), NsmError> {
        let p = &self.params;
        let h = self.cfg.dt;
        let g = p.gamma;
        let mut u = state.u.clone();
        let mut et = state.e.scale(g);
        let mut b = state.b.clone();
        if !self.cfg.nonlinear {
            self.linear.apply(&mut u, &mut et, &mut b);
            let mut e = et.scale(1.0 / g);
            e.div_free = state.e.div_free;
            return Ok((NsmState { time: state.time + h, u, e, b, params: *p }, None));
        }

        let n0 = nonlinear_terms(&state.u, &state.e, &state.b, p, &self.cfg)?;
        let de0 = n0.de_source.scale(g);

        let mut us = u.axpy(h, &n0.du);
        let mut es = et.axpy(h, &de0);
        let mut bs = b.clone();
        self.linear.apply(&mut us, &mut es, &mut bs);
        let n1 = nonlinear_terms(&us, &es.scale(1.0 / g), &bs, p, &self.cfg)?;
        let de1 = n1.de_source.scale(g);

        u.axpy_in_place(0.5 * h, &n0.du);
        et.axpy_in_place(0.5 * h, &de0);
        self.linear.apply(&mut u, &mut et, &mut b);
        u.axpy_in_place(0.5 * h, &n1.du);
        et.axpy_in_place(0.5 * h, &de1);

        let mut e = et.scale(1.0 / g);
        u.div_free = true;
        e.div_free = true;
        b.div_free = true;
        Ok((NsmState { time: state.time + h, u, e, b, params: *p }, Some(n0.ohm)))
    }
}

pub fn step(state: &NsmState, cfg: &StepConfig) -> Result<NsmState, NsmError> {
    check_step(state, cfg)?;
    NsmStepper::new(state.grid(), state.params, *cfg)?.step(state).map(|(s, _)| s)
}

/// Data handed to probe hooks.
pub struct Probe<'a> {
    pub index: usize,
    pub time: f64,
    pub u: &'a SpectralField,
    pub b: &'a SpectralField,
    /// `None` for the Hall system.
    pub e: Option<&'a SpectralField>,
    pub j: &'a SpectralField,
    pub row: &'a LedgerRow,
}

#[derive(Debug, Clone)]
pub struct NsmRun {
    pub final_state: NsmState,
    pub ledger: Vec<LedgerRow>,
    /// Largest `|div|` of `(u, B, E, j)` over all probes.
    pub max_divergence: [f64; 4],
    pub steps: usize,
}

pub fn nsm_ledger_row(state: &NsmState, ohm: &OhmSolveReport) -> Result<LedgerRow, FieldError> {
    let p = &state.params;
    let jn = l2_norm(&ohm.j);
    let gu = hdot_norm(&state.u, 1.0);
    Ok(LedgerRow {
        t: state.time,
        energy: state.energy(),
        grad_u_sq: gu * gu,
        joule: p.beta_eta2() * jn * jn,
        divu_max: state.u.max_divergence(),
        div_b_max: state.b.max_divergence(),
        bands: magnetic_band_norms(&state.b, p)?,
        ohm_iters: ohm.iterations,
        ohm_residual: ohm.residual,
    })
}

/// Advance to `initial.time + horizon`, emitting a ledger row (and calling
/// `hook`) every `probe_interval`, including the initial state.
pub fn run_nsm(
    initial: NsmState,
    horizon: f64,
    cfg: &StepConfig,
    probe_interval: f64,
    hook: &mut dyn FnMut(&Probe),
) -> Result<NsmRun, NsmError> {
    let schedule = Schedule::new(cfg.dt, horizon, probe_interval)?;
    check_step(&initial, cfg)?;
    let stepper = NsmStepper::new(initial.grid(), initial.params, *cfg)?;
    let t0 = initial.time;
    let mut state = initial;
    let mut ledger = Vec::with_capacity(schedule.probe_count());
    let mut max_div = [0.0f64; 4];

    let mut record = |state: &NsmState, ohm: &OhmSolveReport, ledger: &mut Vec<LedgerRow>| -> Result<(), NsmError> {
        let row = nsm_ledger_row(state, ohm)?;
        let divs = [row.divu_max, row.div_b_max, state.e.max_divergence(), ohm.j.max_divergence()];
        for (m, d) in max_div.iter_mut().zip(divs) {
            *m = m.max(d);
        }
        hook(&Probe {
            index: ledger.len(),
            time: state.time,
            u: &state.u,
            b: &state.b,
            e: Some(&state.e),
            j: &ohm.j,
            row: &row,
        });
        ledger.push(row);
        Ok(())
    };

    let ohm_at = |s: &NsmState| solve_ohm(&s.u, &s.b, &s.e, &s.params, cfg.ohm_tol, cfg.ohm_max_iter);
    record(&state, &ohm_at(&state)?, &mut ledger)?;
    for k in 1..=schedule.steps {
        let (mut next, _) = stepper.step(&state)?;
        next.time = schedule.time_of(t0, k);
        let en = next.energy();
        if !en.is_finite() {
            return Err(NsmError::NotFinite { step: k, time: next.time, energy: en });
        }
        state = next;
        if k % schedule.probe_every == 0 {
            record(&state, &ohm_at(&state)?, &mut ledger)?;
        }
    }
    Ok(NsmRun { final_state: state, ledger, max_divergence: max_div, steps: schedule.steps })
}

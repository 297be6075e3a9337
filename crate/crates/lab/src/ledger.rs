//! Run ledger rows and the probe/time-step schedule shared by both solvers.

use std::io::Write;

use nsm_core::{BandSpec, PhysParams};
use thiserror::Error;

use crate::fields::{band_norms, FieldError, SpectralField};

pub const LEDGER_HEADER: &str = "t,energy,grad_u_sq,joule,divu_max,divB_max,band_ll,band_lt,band_mid,band_gt,band_gg,ohm_iters,ohm_residual";

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerRow {
    pub t: f64,
    pub energy: f64,
    pub grad_u_sq: f64,
    /// `beta eta^2 ||j||^2` (NSM) or `beta eta^2 ||curl B||^2` (Hall).
    pub joule: f64,
    pub divu_max: f64,
    pub div_b_max: f64,
    pub bands: [f64; 5],
    pub ohm_iters: usize,
    pub ohm_residual: f64,
}

/// Fixed-width scientific notation with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl LedgerRow {
    pub fn csv_line(&self) -> String {
        let mut cols = vec![
            fmt_f64(self.t),
            fmt_f64(self.energy),
            fmt_f64(self.grad_u_sq),
            fmt_f64(self.joule),
            fmt_f64(self.divu_max),
            fmt_f64(self.div_b_max),
        ];
        cols.extend(self.bands.iter().map(|v| fmt_f64(*v)));
        cols.push(self.ohm_iters.to_string());
        cols.push(fmt_f64(self.ohm_residual));
        cols.join(",")
    }
}

pub fn write_ledger<W: Write>(mut w: W, rows: &[LedgerRow]) -> std::io::Result<()> {
    writeln!(w, "{LEDGER_HEADER}")?;
    for r in rows {
        writeln!(w, "{}", r.csv_line())?;
    }
    Ok(())
}

/// Band norms of `b` under the (clamped) thresholds of `p`.
pub fn magnetic_band_norms(b: &SpectralField, p: &PhysParams) -> Result<[f64; 5], FieldError> {
    band_norms(b, &BandSpec::from_params(p).clamped())
}

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("time step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("horizon must be non-negative and finite, got {0}")]
    BadHorizon(f64),
    #[error("probe interval {probe_interval} is not a multiple of dt = {dt}")]
    ProbeMismatch { probe_interval: f64, dt: f64 },
    #[error("horizon {horizon} is not a multiple of the probe interval {probe_interval}")]
    HorizonMismatch { horizon: f64, probe_interval: f64 },
}

/// Uniform steps of size `dt`, with a probe every `probe_every` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub dt: f64,
    pub steps: usize,
    pub probe_every: usize,
}

const SCHEDULE_RTOL: f64 = 1e-9;

fn integer_ratio(a: f64, b: f64) -> Option<usize> {
    let r = (a / b).round();
    ((a - r * b).abs() <= SCHEDULE_RTOL * a.abs().max(b)).then_some(r as usize)
}

impl Schedule {
    /// Largest step not above `dt_max` that divides `probe_interval`.
    pub fn synchronized_dt(dt_max: f64, probe_interval: f64) -> f64 {
        probe_interval / (probe_interval / dt_max).ceil()
    }

    pub fn new(dt: f64, horizon: f64, probe_interval: f64) -> Result<Schedule, ScheduleError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(ScheduleError::BadStep(dt));
        }
        if !(horizon >= 0.0 && horizon.is_finite()) {
            return Err(ScheduleError::BadHorizon(horizon));
        }
        let probe_interval = if probe_interval > 0.0 { probe_interval } else { dt };
        let probe_every = integer_ratio(probe_interval, dt)
            .filter(|k| *k > 0)
            .ok_or(ScheduleError::ProbeMismatch { probe_interval, dt })?;
        let probes = integer_ratio(horizon, probe_interval)
            .ok_or(ScheduleError::HorizonMismatch { horizon, probe_interval })?;
        Ok(Schedule { dt, steps: probes * probe_every, probe_every })
    }

    pub fn time_of(&self, t0: f64, step: usize) -> f64 {
        t0 + step as f64 * self.dt
    }

    pub fn probe_count(&self) -> usize {
        self.steps / self.probe_every + 1
    }
}

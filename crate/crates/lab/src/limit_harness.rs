//! The `gamma -> 0` experiment: NSM runs for a decreasing list of `gamma`
//! against one Hall-MHD reference run from the same initial data, with
//! band, high-frequency-current and source-term diagnostics at every
//! probe.
//!
//! Errors are strong `L^2` norms. They are a measurable stand-in for the
//! weak convergence one expects in the limit, not a measurement of it.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use nsm_core::{Band, BandSpec, BandThresholds, PhysParams};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fields::{
    band_filter, dealiased_cross, dealiased_outer, l2_norm, FieldError, Grid, SpectralField,
};
use crate::hall_solver::{hall_step_bounds, run_hall, HallError, HallState};
use crate::ledger::{fmt_f64, LedgerRow, Schedule};
use crate::nsm_solver::{run_nsm, step_bounds, NsmError, NsmState, StepConfig, DEFAULT_CFL_SAFETY};
use crate::ohm_closure::electric_field_closure;
use crate::presets::{initial_electric_field, initial_fields, E0Policy, Preset};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("Hall reference run failed: {0}")]
    Hall(#[from] HallError),
    #[error(transparent)]
    Nsm(#[from] NsmError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Strictly decreasing.
    pub gamma_list: Vec<f64>,
    /// Physical and band parameters; its `gamma` is ignored.
    pub base: PhysParams,
    pub grid_n: usize,
    pub dealias_fraction: f64,
    pub preset: Preset,
    pub amplitude: f64,
    pub seed: u64,
    pub e0_policy: E0Policy,
    pub horizon: f64,
    pub probe_interval: f64,
    /// Upper bound on the step; the stability bounds of each run apply on
    /// top of it.
    pub dt_max: Option<f64>,
    pub cfl_safety: f64,
}

impl SweepConfig {
    pub fn reference() -> SweepConfig {
        SweepConfig {
            gamma_list: vec![0.4, 0.2, 0.1, 0.05],
            base: PhysParams::with_physics(1.0, 1.0, 1.0).expect("valid defaults"),
            grid_n: 32,
            dealias_fraction: crate::fields::DEALIAS_TWO_THIRDS,
            preset: Preset::Reference,
            amplitude: 0.2,
            seed: 0,
            e0_policy: E0Policy::WellPrepared,
            horizon: 0.25,
            probe_interval: 0.0125,
            dt_max: None,
            cfl_safety: DEFAULT_CFL_SAFETY,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.gamma_list.is_empty() {
            return Err(HarnessError::Config("gamma_list is empty".into()));
        }
        if !self.gamma_list.windows(2).all(|w| w[0] > w[1]) {
            return Err(HarnessError::Config("gamma_list must be strictly decreasing".into()));
        }
        for g in &self.gamma_list {
            self.base.with_gamma(*g).validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        }
        if !(self.horizon >= 0.0 && self.probe_interval > 0.0) {
            return Err(HarnessError::Config("horizon must be >= 0 and probe_interval > 0".into()));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(HarnessError::Config("cfl_safety must lie in (0, 1]".into()));
        }
        Ok(())
    }

    /// First 12 hex digits of the SHA-256 of the JSON form.
    pub fn hash(&self) -> String {
        short_hash(serde_json::to_string(self).expect("serializable").as_bytes())
    }
}

pub fn short_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))[..12].to_string()
}

/// Five band norms of `B` together with the thresholds used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandDiagnostics {
    pub norms: [f64; 5],
    /// Thresholds as computed from the parameters.
    pub raw_thresholds: [f64; 4],
    /// Thresholds actually used (running maximum of the raw ones).
    pub thresholds: [f64; 4],
    /// False when the raw thresholds are out of order; the `mid` and `gt`
    /// bands are then collapsed and not meaningful.
    pub ordered: bool,
    /// `|sum ||band||^2 - ||B||^2| / max(||B||^2, tiny)`.
    pub partition_defect: f64,
}

pub fn band_diagnostics(b: &SpectralField, p: &PhysParams) -> Result<BandDiagnostics, FieldError> {
    let spec = BandSpec::from_params(p);
    let used = spec.clamped();
    let norms = crate::fields::band_norms(b, &used)?;
    let total = l2_norm(b).powi(2);
    let sum: f64 = norms.iter().map(|v| v * v).sum();
    Ok(BandDiagnostics {
        norms,
        raw_thresholds: spec.raw.0,
        thresholds: used.0,
        ordered: spec.is_ordered(),
        partition_defect: (sum - total).abs() / total.max(f64::MIN_POSITIVE),
    })
}

/// `L^2` norm of the part of `j` with `|xi| > Phi = phi(gamma/delta)`.
pub fn high_freq_current(j: &SpectralField, p: &PhysParams) -> Result<f64, FieldError> {
    let phi = p.high_cutoff();
    let t = BandThresholds([phi, phi, phi, phi]);
    Ok(l2_norm(&band_filter(j, &t, Band::Gg)?))
}

/// True when no lattice wavevector lies beyond `Phi`.
pub fn high_band_empty(grid: &Grid, p: &PhysParams) -> bool {
    p.high_cutoff() >= grid.max_radius()
}

/// True when some lattice wavevector falls in `band` under `thresholds`.
pub fn band_occupied(grid: &Grid, thresholds: &BandThresholds, band: Band) -> bool {
    grid.k2_all().iter().any(|k2| BandSpec::classify_with(thresholds, k2.sqrt()) == band)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceNorms {
    /// `||u x B||_{L^2}`.
    pub g3_l2: f64,
    /// `||u (x) u||_{L^2}`.
    pub g4_l2: f64,
    /// `||grad(u (x) u)||_{L^2}`.
    pub grad_g4_l2: f64,
    /// `||grad(u (x) u)||_{L^p}` with `p = 3/(3 - s)`.
    pub grad_g4_lp: f64,
    pub p: f64,
}

pub fn source_norms(u: &SpectralField, b: &SpectralField, sobolev_s: f64) -> Result<SourceNorms, FieldError> {
    let g3 = dealiased_cross(u, b)?;
    let g4 = dealiased_outer(u, u)?;
    let grad = g4.gradient_physical();
    let len = u.grid.len();
    let pointwise: Vec<f64> = (0..len).map(|i| grad.iter().map(|c| c[i] * c[i]).sum::<f64>().sqrt()).collect();
    let weight = u.grid.spacing().powi(3);
    let p = 3.0 / (3.0 - sobolev_s);
    let sq: Vec<f64> = pointwise.iter().map(|v| v * v).collect();
    let pw: Vec<f64> = pointwise.iter().map(|v| v.powf(p)).collect();
    Ok(SourceNorms {
        g3_l2: l2_norm(&g3),
        g4_l2: g4.l2_norm(),
        grad_g4_l2: (weight * nsm_core::math::pairwise_sum(&sq)).sqrt(),
        grad_g4_lp: (weight * nsm_core::math::pairwise_sum(&pw)).powf(1.0 / p),
        p,
    })
}

/// Per-probe diagnostics of one NSM run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub t: f64,
    pub err_u: f64,
    pub err_b: f64,
    /// `||E^gamma - E_lim||` with `E_lim` the closure field of the Hall
    /// state at the same time.
    pub err_e: f64,
    pub bands: [f64; 5],
    pub band_partition_defect: f64,
    pub j_high: f64,
    pub sources: SourceNorms,
    pub energy: f64,
    pub u_sq: f64,
    pub b_sq: f64,
    pub hall_u_sq: f64,
    pub hall_b_sq: f64,
    pub grad_u_sq: f64,
    pub joule: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaResult {
    pub gamma: f64,
    /// `None` on success, otherwise the failure message.
    pub failure: Option<String>,
    pub dt: f64,
    pub steps: usize,
    pub sup_err_u: f64,
    pub sup_err_b: f64,
    pub sup_err_e: f64,
    pub l2t_err_u: f64,
    pub l2t_err_b: f64,
    pub raw_thresholds: [f64; 4],
    pub thresholds: [f64; 4],
    pub thresholds_ordered: bool,
    pub mid_band_occupied: bool,
    /// `Phi` at least the largest lattice radius.
    pub high_band_empty: bool,
    /// `(int_0^T ||B_mid||^2 dt)^(1/2)` by the trapezoid rule on probes.
    pub mid_band_l2t: f64,
    pub j_high_l2t: f64,
    pub max_band_partition_defect: f64,
    /// `|E(T) - E(0) + int (||grad u||^2 + beta eta^2 ||j||^2) dt| / T`
    /// with the trapezoid rule on probes.
    pub energy_residual: f64,
    pub max_divergence: [f64; 4],
    pub probes: Vec<ProbeRecord>,
}

impl GammaResult {
    fn failed(gamma: f64, reason: String) -> GammaResult {
        GammaResult {
            gamma,
            failure: Some(reason),
            dt: f64::NAN,
            steps: 0,
            sup_err_u: f64::NAN,
            sup_err_b: f64::NAN,
            sup_err_e: f64::NAN,
            l2t_err_u: f64::NAN,
            l2t_err_b: f64::NAN,
            raw_thresholds: [f64::NAN; 4],
            thresholds: [f64::NAN; 4],
            thresholds_ordered: false,
            mid_band_occupied: false,
            high_band_empty: false,
            mid_band_l2t: f64::NAN,
            j_high_l2t: f64::NAN,
            max_band_partition_defect: f64::NAN,
            energy_residual: f64::NAN,
            max_divergence: [f64::NAN; 4],
            probes: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HallSummary {
    pub dt: f64,
    pub steps: usize,
    pub energy_residual: f64,
    pub max_divergence: [f64; 4],
    pub ledger: Vec<LedgerRowRecord>,
}

/// Serializable mirror of [`LedgerRow`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerRowRecord {
    pub t: f64,
    pub energy: f64,
    pub grad_u_sq: f64,
    pub joule: f64,
    pub divu_max: f64,
    pub div_b_max: f64,
    pub bands: [f64; 5],
}

impl From<&LedgerRow> for LedgerRowRecord {
    fn from(r: &LedgerRow) -> Self {
        LedgerRowRecord {
            t: r.t,
            energy: r.energy,
            grad_u_sq: r.grad_u_sq,
            joule: r.joule,
            divu_max: r.divu_max,
            div_b_max: r.div_b_max,
            bands: r.bands,
        }
    }
}

/// Least-squares slope of `log(error)` against `log(gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slopes {
    pub u: Option<f64>,
    pub b: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config_hash: String,
    pub config: SweepConfig,
    /// Strong-norm errors against the Hall reference, used as a surrogate
    /// for weak convergence.
    pub error_norm: String,
    pub results: Vec<GammaResult>,
    pub hall: HallSummary,
    pub slopes: Slopes,
    /// Largest lattice radius `sqrt(3) n / 2`.
    pub lattice_max_radius: f64,
    /// First gamma (in sweep order) for which `Phi` clears the lattice,
    /// if the sweep crosses that regime change.
    pub high_band_regime_change: Option<f64>,
}

pub fn fit_loglog_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0 && a.is_finite() && b.is_finite())
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn trapezoid_l2t(times: &[f64], values: &[f64]) -> f64 {
    let mut acc = 0.0;
    for k in 1..times.len() {
        acc += 0.5 * (times[k] - times[k - 1]) * (values[k] * values[k] + values[k - 1] * values[k - 1]);
    }
    acc.sqrt()
}

/// `|E(T) - E(0) + int D dt| / T` from ledger rows (trapezoid rule).
pub fn energy_residual(rows: &[LedgerRow]) -> f64 {
    if rows.len() < 2 {
        return 0.0;
    }
    let mut dissipated = 0.0;
    for k in 1..rows.len() {
        let d0 = rows[k - 1].grad_u_sq + rows[k - 1].joule;
        let d1 = rows[k].grad_u_sq + rows[k].joule;
        dissipated += 0.5 * (rows[k].t - rows[k - 1].t) * (d0 + d1);
    }
    let first = &rows[0];
    let last = &rows[rows.len() - 1];
    (last.energy - first.energy + dissipated).abs() / (last.t - first.t)
}

struct HallReference {
    probes: Vec<(SpectralField, SpectralField, SpectralField)>,
    summary: HallSummary,
}

fn stable_dt(bounds: &[(&'static str, f64)], dt_max: Option<f64>, probe_interval: f64) -> f64 {
    let mut dt = bounds.iter().map(|b| b.1).fold(dt_max.unwrap_or(f64::INFINITY), f64::min);
    if !dt.is_finite() {
        dt = probe_interval;
    }
    Schedule::synchronized_dt(dt.min(probe_interval), probe_interval)
}

/// Run the sweep with up to `workers` concurrent NSM trajectories. The
/// report does not depend on `workers`.
pub fn gamma_sweep(cfg: &SweepConfig, workers: usize) -> Result<SweepReport, HarnessError> {
    cfg.validate()?;
    let grid = Grid::new(cfg.grid_n, cfg.dealias_fraction)?;
    let (u0, b0) = initial_fields(&grid, cfg.preset, cfg.amplitude, cfg.seed);

    // Step sizes: each NSM run uses its own stable step; the Hall run uses
    // the finest of those (and its own bound).
    let mut nsm_dts = Vec::with_capacity(cfg.gamma_list.len());
    for g in &cfg.gamma_list {
        let p = cfg.base.with_gamma(*g);
        let e0 = initial_electric_field(&u0, &b0, &p, cfg.e0_policy)?;
        let s = NsmState::new(u0.clone(), e0, b0.clone(), p)?;
        nsm_dts.push(stable_dt(&step_bounds(&s, cfg.cfl_safety), cfg.dt_max, cfg.probe_interval));
    }
    let hall_params = cfg.base.with_gamma(*cfg.gamma_list.last().unwrap());
    let hall0 = HallState::new(u0.clone(), b0.clone(), hall_params)?;
    let finest = nsm_dts.iter().copied().fold(f64::INFINITY, f64::min);
    let hall_dt = stable_dt(&hall_step_bounds(&hall0, cfg.cfl_safety), Some(finest), cfg.probe_interval);

    let hall = run_hall_reference(hall0, cfg, hall_dt)?;

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<GammaResult>>> = Mutex::new(vec![None; cfg.gamma_list.len()]);
    let workers = workers.max(1).min(cfg.gamma_list.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= cfg.gamma_list.len() {
                    break;
                }
                let g = cfg.gamma_list[i];
                let result = run_one_gamma(cfg, g, nsm_dts[i], &u0, &b0, &hall)
                    .unwrap_or_else(|e| GammaResult::failed(g, e.to_string()));
                slots.lock().unwrap()[i] = Some(result);
            });
        }
    });
    let results: Vec<GammaResult> = slots.into_inner().unwrap().into_iter().map(|r| r.unwrap()).collect();

    let ok: Vec<&GammaResult> = results.iter().filter(|r| r.ok()).collect();
    let gammas: Vec<f64> = ok.iter().map(|r| r.gamma).collect();
    let slopes = Slopes {
        u: fit_loglog_slope(&gammas, &ok.iter().map(|r| r.sup_err_u).collect::<Vec<_>>()),
        b: fit_loglog_slope(&gammas, &ok.iter().map(|r| r.sup_err_b).collect::<Vec<_>>()),
    };
    let high_band_regime_change = cfg
        .gamma_list
        .windows(2)
        .find(|w| {
            !high_band_empty(&grid, &cfg.base.with_gamma(w[0])) && high_band_empty(&grid, &cfg.base.with_gamma(w[1]))
        })
        .map(|w| w[1]);

    Ok(SweepReport {
        config_hash: cfg.hash(),
        config: cfg.clone(),
        error_norm: "sup over probe times of the spatial L2 norm (strong-norm surrogate for weak convergence)".into(),
        results,
        hall: hall.summary,
        slopes,
        lattice_max_radius: grid.max_radius(),
        high_band_regime_change,
    })
}

fn run_hall_reference(initial: HallState, cfg: &SweepConfig, dt: f64) -> Result<HallReference, HarnessError> {
    let mut probes = Vec::new();
    let mut err: Option<FieldError> = None;
    let p = initial.params;
    let step = StepConfig { cfl_safety: cfg.cfl_safety, ..StepConfig::new(dt) };
    let run = run_hall(initial, cfg.horizon, &step, cfg.probe_interval, &mut |probe| {
        match electric_field_closure(probe.u, probe.b, probe.j, &p) {
            Ok(e) => probes.push((probe.u.clone(), probe.b.clone(), e)),
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e.into());
    }
    Ok(HallReference {
        probes,
        summary: HallSummary {
            dt,
            steps: run.steps,
            energy_residual: energy_residual(&run.ledger),
            max_divergence: run.max_divergence,
            ledger: run.ledger.iter().map(LedgerRowRecord::from).collect(),
        },
    })
}

fn run_one_gamma(
    cfg: &SweepConfig,
    gamma: f64,
    dt: f64,
    u0: &SpectralField,
    b0: &SpectralField,
    hall: &HallReference,
) -> Result<GammaResult, HarnessError> {
    let p = cfg.base.with_gamma(gamma);
    let e0 = initial_electric_field(u0, b0, &p, cfg.e0_policy)?;
    let state = NsmState::new(u0.clone(), e0, b0.clone(), p)?;
    let step = StepConfig { cfl_safety: cfg.cfl_safety, ..StepConfig::new(dt) };
    let mut records = Vec::new();
    let mut err: Option<FieldError> = None;
    let mut defects = Vec::new();
    let run = run_nsm(state, cfg.horizon, &step, cfg.probe_interval, &mut |probe| {
        let (hu, hb, he) = &hall.probes[probe.index];
        let rec = (|| -> Result<ProbeRecord, FieldError> {
            let bands = band_diagnostics(probe.b, &p)?;
            defects.push(bands.partition_defect);
            let e = probe.e.expect("NSM probes carry E");
            Ok(ProbeRecord {
                t: probe.time,
                err_u: l2_norm(&probe.u.sub(hu)),
                err_b: l2_norm(&probe.b.sub(hb)),
                err_e: l2_norm(&e.sub(he)),
                bands: bands.norms,
                band_partition_defect: bands.partition_defect,
                j_high: high_freq_current(probe.j, &p)?,
                sources: source_norms(probe.u, probe.b, p.sobolev_s)?,
                energy: probe.row.energy,
                u_sq: l2_norm(probe.u).powi(2),
                b_sq: l2_norm(probe.b).powi(2),
                hall_u_sq: l2_norm(hu).powi(2),
                hall_b_sq: l2_norm(hb).powi(2),
                grad_u_sq: probe.row.grad_u_sq,
                joule: probe.row.joule,
            })
        })();
        match rec {
            Ok(r) => records.push(r),
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e.into());
    }
    let spec = BandSpec::from_params(&p);
    let grid = &u0.grid;
    let times: Vec<f64> = records.iter().map(|r| r.t).collect();
    let col = |f: &dyn Fn(&ProbeRecord) -> f64| records.iter().map(f).collect::<Vec<f64>>();
    let sup = |v: Vec<f64>| v.into_iter().fold(0.0, f64::max);
    Ok(GammaResult {
        gamma,
        failure: None,
        dt,
        steps: run.steps,
        sup_err_u: sup(col(&|r| r.err_u)),
        sup_err_b: sup(col(&|r| r.err_b)),
        sup_err_e: sup(col(&|r| r.err_e)),
        l2t_err_u: trapezoid_l2t(&times, &col(&|r| r.err_u)),
        l2t_err_b: trapezoid_l2t(&times, &col(&|r| r.err_b)),
        raw_thresholds: spec.raw.0,
        thresholds: spec.clamped().0,
        thresholds_ordered: spec.is_ordered(),
        mid_band_occupied: band_occupied(grid, &spec.clamped(), Band::Mid),
        high_band_empty: high_band_empty(grid, &p),
        mid_band_l2t: trapezoid_l2t(&times, &col(&|r| r.bands[Band::Mid.index()])),
        j_high_l2t: trapezoid_l2t(&times, &col(&|r| r.j_high)),
        max_band_partition_defect: defects.iter().copied().fold(0.0, f64::max),
        energy_residual: energy_residual(&run.ledger),
        max_divergence: run.max_divergence,
        probes: records,
    })
}

/// Long-format CSV: `gamma,t,metric,value`.
pub fn write_long_csv<W: Write>(mut w: W, report: &SweepReport) -> std::io::Result<()> {
    writeln!(w, "gamma,t,metric,value")?;
    for r in &report.results {
        for p in &r.probes {
            let mut metrics: Vec<(&str, f64)> = vec![
                ("err_u", p.err_u),
                ("err_b", p.err_b),
                ("err_e", p.err_e),
            ];
            for b in Band::ALL {
                metrics.push((BAND_METRICS[b.index()], p.bands[b.index()]));
            }
            metrics.extend([
                ("j_high", p.j_high),
                ("g3_l2", p.sources.g3_l2),
                ("g4_l2", p.sources.g4_l2),
                ("grad_g4_l2", p.sources.grad_g4_l2),
                ("grad_g4_lp", p.sources.grad_g4_lp),
                ("energy", p.energy),
                ("u_sq", p.u_sq),
                ("b_sq", p.b_sq),
                ("hall_u_sq", p.hall_u_sq),
                ("hall_b_sq", p.hall_b_sq),
                ("grad_u_sq", p.grad_u_sq),
                ("joule", p.joule),
            ]);
            for (m, v) in metrics {
                writeln!(w, "{},{},{},{}", fmt_f64(r.gamma), fmt_f64(p.t), m, fmt_f64(v))?;
            }
        }
    }
    Ok(())
}

const BAND_METRICS: [&str; 5] = ["band_ll", "band_lt", "band_mid", "band_gt", "band_gg"];

/// Write `sweep_<hash>.json` and `sweep_<hash>.csv` into `dir`.
pub fn write_report(dir: &std::path::Path, report: &SweepReport) -> Result<[std::path::PathBuf; 2], HarnessError> {
    std::fs::create_dir_all(dir)?;
    let json = dir.join(format!("sweep_{}.json", report.config_hash));
    let csv = dir.join(format!("sweep_{}.csv", report.config_hash));
    serde_json::to_writer_pretty(std::io::BufWriter::new(std::fs::File::create(&json)?), report)?;
    write_long_csv(std::io::BufWriter::new(std::fs::File::create(&csv)?), report)?;
    Ok([json, csv])
}

//! Run configuration: a TOML document with `[physics]`, `[sweep]`,
//! `[grid]`, `[time]`, `[initial]` and `[output]` sections.

use std::path::PathBuf;

use nsm_core::PhysParams;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limit_harness::{short_hash, SweepConfig};
use crate::presets::{E0Policy, Preset};

#[derive(Debug, Error, PartialEq)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsSection {
    pub beta: f64,
    pub eta: f64,
    pub gamma: f64,
    #[serde(default = "default_s")]
    pub s: f64,
    #[serde(rename = "K", default = "default_k")]
    pub k: f64,
    #[serde(rename = "R", default = "default_r")]
    pub r: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_s() -> f64 {
    0.75
}
fn default_k() -> f64 {
    1.1
}
fn default_r() -> f64 {
    2.0
}
fn default_delta() -> f64 {
    1.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub gamma_list: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n: usize,
    #[serde(default = "default_dealias")]
    pub dealias_fraction: f64,
}

fn default_dealias() -> f64 {
    crate::fields::DEALIAS_TWO_THIRDS
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DtPolicy {
    /// Largest stable step that divides the probe interval.
    Auto,
    /// Use `dt` as given; refused if it violates a stability bound.
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    pub dt_policy: DtPolicy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(rename = "T")]
    pub t_end: f64,
    #[serde(default = "default_cfl")]
    pub cfl_safety: f64,
    pub probe_interval: f64,
}

fn default_cfl() -> f64 {
    crate::nsm_solver::DEFAULT_CFL_SAFETY
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    pub preset: Preset,
    pub amplitude: f64,
    pub e0_policy: E0Policy,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directory: Option<PathBuf>,
    /// Write a snapshot every this many probes (0: none).
    #[serde(default)]
    pub snapshot_every: usize,
    #[serde(default = "default_formats")]
    pub formats: Vec<OutputFormat>,
}

fn default_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Csv, OutputFormat::Json]
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { directory: None, snapshot_every: 0, formats: default_formats() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub physics: PhysicsSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    pub grid: GridSection,
    pub time: TimeSection,
    pub initial: InitialSection,
    #[serde(default)]
    pub output: OutputSection,
}

impl RunConfig {
    /// The reference experiment: `n = 32`, `T = 0.25`, `beta = eta = 1`,
    /// amplitude 0.2, well-prepared `E0`, `gamma in {0.4, 0.2, 0.1, 0.05}`.
    pub fn reference() -> RunConfig {
        RunConfig {
            physics: PhysicsSection {
                beta: 1.0,
                eta: 1.0,
                gamma: 0.2,
                s: default_s(),
                k: default_k(),
                r: default_r(),
                delta: default_delta(),
            },
            sweep: Some(SweepSection { gamma_list: vec![0.4, 0.2, 0.1, 0.05] }),
            grid: GridSection { n: 32, dealias_fraction: default_dealias() },
            time: TimeSection {
                dt_policy: DtPolicy::Auto,
                dt: None,
                t_end: 0.25,
                cfl_safety: default_cfl(),
                probe_interval: 0.0125,
            },
            initial: InitialSection {
                preset: Preset::Reference,
                amplitude: 0.2,
                e0_policy: E0Policy::WellPrepared,
                seed: 0,
            },
            output: OutputSection::default(),
        }
    }

    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError {
            line: e.span().map(|s| line_of_offset(text, s.start)),
            message: e.message().to_string(),
        })?;
        cfg.validate(text)?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// First 12 hex digits of the SHA-256 of the canonical serialization.
    pub fn hash(&self) -> String {
        short_hash(self.to_toml().as_bytes())
    }

    pub fn params(&self) -> PhysParams {
        let ph = &self.physics;
        PhysParams {
            beta: ph.beta,
            eta: ph.eta,
            gamma: ph.gamma,
            sobolev_s: ph.s,
            band_k: ph.k,
            band_r: ph.r,
            band_delta: ph.delta,
        }
    }

    /// Semantic checks; `text` is used only to locate offending keys.
    pub fn validate(&self, text: &str) -> Result<(), ConfigError> {
        let err = |section: &str, key: &str, message: String| ConfigError { line: locate_key(text, section, key), message };

        if let Err(e) = self.params().validate() {
            let key = match &e {
                nsm_core::ParamError::NotPositive { name, .. } | nsm_core::ParamError::OutOfRange { name, .. } => *name,
            };
            let key = match key {
                "sobolev_s" => "s",
                other => other,
            };
            return Err(err("physics", key, e.to_string()));
        }
        if let Some(sw) = &self.sweep {
            if sw.gamma_list.is_empty() {
                return Err(err("sweep", "gamma_list", "gamma_list is empty".into()));
            }
            if !sw.gamma_list.windows(2).all(|w| w[0] > w[1]) {
                return Err(err("sweep", "gamma_list", "gamma_list must be strictly decreasing".into()));
            }
            for g in &sw.gamma_list {
                if let Err(e) = self.params().with_gamma(*g).validate() {
                    return Err(err("sweep", "gamma_list", format!("gamma_list entry {g}: {e}")));
                }
            }
        }
        let g = &self.grid;
        if g.n < 4 || g.n % 2 != 0 || g.n > 512 {
            return Err(err("grid", "n", format!("n must be even and in [4, 512], got {}", g.n)));
        }
        if !(g.dealias_fraction > 0.0 && g.dealias_fraction <= 1.0) {
            return Err(err("grid", "dealias_fraction", format!("dealias_fraction must lie in (0, 1], got {}", g.dealias_fraction)));
        }
        let t = &self.time;
        if !(t.t_end >= 0.0 && t.t_end.is_finite()) {
            return Err(err("time", "T", format!("T must be non-negative, got {}", t.t_end)));
        }
        if !(t.probe_interval > 0.0 && t.probe_interval.is_finite()) {
            return Err(err("time", "probe_interval", format!("probe_interval must be positive, got {}", t.probe_interval)));
        }
        if !(t.cfl_safety > 0.0 && t.cfl_safety <= 1.0) {
            return Err(err("time", "cfl_safety", format!("cfl_safety must lie in (0, 1], got {}", t.cfl_safety)));
        }
        match (t.dt_policy, t.dt) {
            (DtPolicy::Fixed, None) => {
                return Err(err("time", "dt_policy", "dt_policy = \"fixed\" requires dt".into()));
            }
            (_, Some(dt)) if !(dt > 0.0 && dt.is_finite()) => {
                return Err(err("time", "dt", format!("dt must be positive, got {dt}")));
            }
            _ => {}
        }
        let ratio = t.t_end / t.probe_interval;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
            return Err(err("time", "T", "T must be a multiple of probe_interval".into()));
        }
        if !(self.initial.amplitude >= 0.0 && self.initial.amplitude.is_finite()) {
            return Err(err("initial", "amplitude", format!("amplitude must be non-negative, got {}", self.initial.amplitude)));
        }
        Ok(())
    }

    pub fn sweep_config(&self) -> Result<SweepConfig, ConfigError> {
        let sw = self.sweep.as_ref().ok_or(ConfigError { line: None, message: "missing [sweep] gamma_list".into() })?;
        Ok(SweepConfig {
            gamma_list: sw.gamma_list.clone(),
            base: self.params(),
            grid_n: self.grid.n,
            dealias_fraction: self.grid.dealias_fraction,
            preset: self.initial.preset,
            amplitude: self.initial.amplitude,
            seed: self.initial.seed,
            e0_policy: self.initial.e0_policy,
            horizon: self.time.t_end,
            probe_interval: self.time.probe_interval,
            // Each gamma needs its own stable step, so a fixed dt acts as an
            // upper bound here.
            dt_max: self.time.dt,
            cfl_safety: self.time.cfl_safety,
        })
    }
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|b| *b == b'\n').count() + 1
}

/// 1-based line of `key = ...` inside `[section]`, if present.
pub fn locate_key(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('[') {
            current = rest.trim_end_matches(']').trim().to_string();
            continue;
        }
        if current == section {
            if let Some((k, _)) = line.split_once('=') {
                if k.trim().trim_matches('"') == key {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}

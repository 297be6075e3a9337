//! Command-line front end. `main` only parses arguments and calls [`run`].

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{ConfigError, DtPolicy, OutputFormat, RunConfig};
use crate::fields::snapshot::Snapshot;
use crate::fields::{Grid, SpectralField};
use crate::hall_solver::{hall_step_bounds, run_hall, HallState};
use crate::ledger::{write_ledger, Schedule};
use crate::limit_harness::{band_diagnostics, gamma_sweep, high_freq_current, write_report};
use crate::nsm_solver::{run_nsm, step_bounds, NsmState, Probe, StepConfig};
use crate::ohm_closure::{solve_ohm, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::presets::{initial_electric_field, initial_fields};
use crate::verify::{band_estimate_scan, eigen_scan, SpectrumReport};

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "NSM_LAB_OUT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nsm-lab", version, about = "Navier-Stokes-Maxwell / Hall-MHD singular-limit laboratory")]
pub struct Cli {
    /// Configuration file (TOML). Defaults to the built-in reference setup.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides the config and $NSM_LAB_OUT).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Concurrent trajectories for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// More progress output on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum System {
    Nsm,
    Hall,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check closed-form eigenvalues and band estimates; writes a report.
    VerifySpectrum {
        /// Random wavevectors for the eigenvalue comparison.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Radii per side of the shell for each parameter set of the band scan.
        #[arg(long, default_value_t = 400)]
        radii: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run one solver to T and write its ledger.
    Simulate {
        #[arg(long, value_enum)]
        system: System,
    },
    /// Run the gamma sweep against the Hall reference.
    Sweep,
    /// Band analysis of a snapshot file.
    Bands {
        snapshot: PathBuf,
        /// Field to analyse.
        #[arg(long, default_value = "B")]
        field: String,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure { code: EXIT_CONFIG, message: format!("config error: {e}") }
    }
}

fn runtime<E: std::fmt::Display>(e: E) -> Failure {
    Failure { code: EXIT_RUNTIME, message: e.to_string() }
}

/// Run a parsed command line and return the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    match &cli.config {
        None => Ok(RunConfig::reference()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_CONFIG,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            RunConfig::parse(&text).map_err(|e| Failure {
                code: EXIT_CONFIG,
                message: format!("{}: {e}", path.display()),
            })
        }
    }
}

fn output_dir(cli: &Cli, cfg: &RunConfig) -> PathBuf {
    cli.out
        .clone()
        .or_else(|| cfg.output.directory.clone())
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::VerifySpectrum { samples, radii, seed } => {
            let cfg = load_config(cli)?;
            verify_spectrum(cli, &cfg, *samples, *radii, *seed)
        }
        Command::Simulate { system } => {
            let cfg = load_config(cli)?;
            simulate(cli, &cfg, *system)
        }
        Command::Sweep => {
            let cfg = load_config(cli)?;
            sweep(cli, &cfg)
        }
        Command::Bands { snapshot, field } => bands(snapshot, field),
    }
}

fn verify_spectrum(cli: &Cli, cfg: &RunConfig, samples: usize, radii: usize, seed: u64) -> Result<i32, Failure> {
    let report = SpectrumReport {
        eigen: eigen_scan(samples, seed, 1e-10),
        bands: band_estimate_scan(&cfg.params(), radii),
    };
    let dir = output_dir(cli, cfg);
    std::fs::create_dir_all(&dir).map_err(runtime)?;
    let path = dir.join(format!("spectrum_{}.json", cfg.hash()));
    let json = serde_json::json!({ "config_hash": cfg.hash(), "report": report });
    std::fs::write(&path, serde_json::to_string_pretty(&json).map_err(runtime)?).map_err(runtime)?;
    println!(
        "eigenvalues: {} samples, {} violations, worst relative error {:.3e}",
        report.eigen.samples, report.eigen.violations, report.eigen.worst_relative_error
    );
    println!(
        "band estimates: {} parameter sets, {} checks, {} violations",
        report.bands.parameter_sets, report.bands.evaluated, report.bands.violations
    );
    println!("report: {}", path.display());
    Ok(if report.passes() { EXIT_OK } else { EXIT_VERIFY })
}

fn choose_dt(cfg: &RunConfig, bounds: &[(&'static str, f64)]) -> Result<f64, Failure> {
    let t = &cfg.time;
    match t.dt_policy {
        DtPolicy::Fixed => {
            let dt = t.dt.expect("validated");
            for (kind, bound) in bounds {
                if dt > *bound * (1.0 + 1e-12) {
                    return Err(Failure {
                        code: EXIT_CONFIG,
                        message: format!("dt = {dt:e} exceeds the {kind} bound {bound:e}; refusing to step"),
                    });
                }
            }
            Ok(dt)
        }
        DtPolicy::Auto => {
            let dt = bounds.iter().map(|b| b.1).fold(t.dt.unwrap_or(t.probe_interval), f64::min);
            Ok(Schedule::synchronized_dt(dt.min(t.probe_interval), t.probe_interval))
        }
    }
}

fn simulate(cli: &Cli, cfg: &RunConfig, system: System) -> Result<i32, Failure> {
    let grid = Grid::new(cfg.grid.n, cfg.grid.dealias_fraction).map_err(runtime)?;
    let p = cfg.params();
    let (u0, b0) = initial_fields(&grid, cfg.initial.preset, cfg.initial.amplitude, cfg.initial.seed);
    let dir = output_dir(cli, cfg);
    std::fs::create_dir_all(&dir).map_err(runtime)?;
    let hash = cfg.hash();
    let name = match system {
        System::Nsm => "nsm",
        System::Hall => "hall",
    };
    let snapshot_every = cfg.output.snapshot_every;
    let mut snapshot_error = None;
    let mut write_snapshot = |probe: &Probe| {
        if snapshot_every == 0 || probe.index % snapshot_every != 0 {
            return;
        }
        let mut fields = vec![("u".to_string(), probe.u.clone()), ("B".to_string(), probe.b.clone())];
        if let Some(e) = probe.e {
            fields.push(("E".to_string(), e.clone()));
        }
        fields.push(("j".to_string(), probe.j.clone()));
        let snap = Snapshot { time: probe.time, params: p, config_hash: hash.clone(), fields };
        let path = dir.join(format!("snapshot_{name}_{hash}_{:05}.bin", probe.index));
        let res = std::fs::File::create(&path)
            .map_err(|e| e.to_string())
            .and_then(|f| snap.write(std::io::BufWriter::new(f)).map_err(|e| e.to_string()));
        if let Err(e) = res {
            snapshot_error = Some(format!("{}: {e}", path.display()));
        }
    };

    let ledger = match system {
        System::Nsm => {
            let e0 = initial_electric_field(&u0, &b0, &p, cfg.initial.e0_policy).map_err(runtime)?;
            let state = NsmState::new(u0, e0, b0, p).map_err(runtime)?;
            let dt = choose_dt(cfg, &step_bounds(&state, cfg.time.cfl_safety))?;
            let step = StepConfig { cfl_safety: cfg.time.cfl_safety, ..StepConfig::new(dt) };
            if cli.verbose > 0 {
                eprintln!("nsm: dt = {dt:e}, gamma = {}", p.gamma);
            }
            run_nsm(state, cfg.time.t_end, &step, cfg.time.probe_interval, &mut write_snapshot)
                .map_err(runtime)?
                .ledger
        }
        System::Hall => {
            let state = HallState::new(u0, b0, p).map_err(runtime)?;
            let dt = choose_dt(cfg, &hall_step_bounds(&state, cfg.time.cfl_safety))?;
            let step = StepConfig { cfl_safety: cfg.time.cfl_safety, ..StepConfig::new(dt) };
            if cli.verbose > 0 {
                eprintln!("hall: dt = {dt:e}");
            }
            run_hall(state, cfg.time.t_end, &step, cfg.time.probe_interval, &mut write_snapshot)
                .map_err(runtime)?
                .ledger
        }
    };
    if let Some(e) = snapshot_error {
        return Err(Failure { code: EXIT_RUNTIME, message: format!("snapshot write failed: {e}") });
    }
    if cfg.output.formats.contains(&OutputFormat::Csv) {
        let path = dir.join(format!("ledger_{name}_{hash}.csv"));
        let f = std::fs::File::create(&path).map_err(runtime)?;
        let mut w = std::io::BufWriter::new(f);
        writeln!(w, "# config_hash={hash}").map_err(runtime)?;
        write_ledger(&mut w, &ledger).map_err(runtime)?;
        println!("ledger: {}", path.display());
    }
    let last = ledger.last().expect("initial row");
    println!("final t = {:.6e} energy = {:.16e}", last.t, last.energy);
    Ok(EXIT_OK)
}

fn sweep(cli: &Cli, cfg: &RunConfig) -> Result<i32, Failure> {
    let sc = cfg.sweep_config()?;
    let report = gamma_sweep(&sc, cli.workers).map_err(runtime)?;
    let dir = output_dir(cli, cfg);
    let [json, csv] = write_report(&dir, &report).map_err(runtime)?;
    for r in &report.results {
        match &r.failure {
            None => println!(
                "gamma = {:<8} sup|u-u_H| = {:.6e}  sup|B-B_H| = {:.6e}  |B_mid|_L2t = {:.3e}  |j_high|_L2t = {:.3e}{}",
                r.gamma,
                r.sup_err_u,
                r.sup_err_b,
                r.mid_band_l2t,
                r.j_high_l2t,
                if r.thresholds_ordered { "" } else { "  [thresholds out of order]" }
            ),
            Some(reason) => println!("gamma = {:<8} FAILED: {reason}", r.gamma),
        }
    }
    let fmt = |s: Option<f64>| s.map(|v| format!("{v:.16e}")).unwrap_or_else(|| "n/a".into());
    println!("slope u: {}", fmt(report.slopes.u));
    println!("slope B: {}", fmt(report.slopes.b));
    if let Some(g) = report.high_band_regime_change {
        println!("high band empty on the lattice from gamma = {g}");
    }
    println!("report: {} {}", json.display(), csv.display());
    Ok(if report.results.iter().all(|r| !r.ok()) { EXIT_RUNTIME } else { EXIT_OK })
}

fn bands(path: &Path, field: &str) -> Result<i32, Failure> {
    let file = std::fs::File::open(path).map_err(runtime)?;
    let snap = Snapshot::read(std::io::BufReader::new(file)).map_err(runtime)?;
    let f: &SpectralField = snap
        .field(field)
        .ok_or_else(|| Failure { code: EXIT_RUNTIME, message: format!("snapshot has no field `{field}`") })?;
    let diag = band_diagnostics(f, &snap.params).map_err(runtime)?;
    let j_high = match (snap.field("j"), snap.field("u"), snap.field("B"), snap.field("E")) {
        (Some(j), ..) => Some(high_freq_current(j, &snap.params).map_err(runtime)?),
        (None, Some(u), Some(b), Some(e)) => {
            let ohm = solve_ohm(u, b, e, &snap.params, DEFAULT_TOL, DEFAULT_MAX_ITER).map_err(runtime)?;
            Some(high_freq_current(&ohm.j, &snap.params).map_err(runtime)?)
        }
        _ => None,
    };
    let out = serde_json::json!({
        "time": snap.time,
        "config_hash": snap.config_hash,
        "field": field,
        "bands": diag,
        "high_freq_current": j_high,
    });
    println!("{}", serde_json::to_string_pretty(&out).map_err(runtime)?);
    Ok(EXIT_OK)
}

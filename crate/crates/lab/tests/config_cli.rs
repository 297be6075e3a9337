use std::path::Path;
use std::process::Command;

use nsm_lab::config::{locate_key, DtPolicy, RunConfig};
use nsm_lab::fields::snapshot::Snapshot;
use nsm_lab::presets::Preset;

const REFERENCE: &str = include_str!("../configs/reference.toml");

fn small_config(extra_time: &str, preset: &str, t_end: f64) -> String {
    format!(
        r#"[physics]
beta = 1.0
eta = 1.0
gamma = 0.3

[grid]
n = 8

[time]
{extra_time}
T = {t_end}
probe_interval = 0.01

[initial]
preset = "{preset}"
amplitude = 0.2
e0_policy = "well_prepared"

[output]
snapshot_every = 1
"#
    )
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nsm-lab"));
    c.env_remove("NSM_LAB_OUT");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn files_with_prefix(dir: &Path, prefix: &str) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with(prefix))
        .collect();
    v.sort();
    v
}

#[test]
fn shipped_config_is_the_reference() {
    let cfg = RunConfig::parse(REFERENCE).unwrap();
    assert_eq!(cfg, RunConfig::reference());
    assert_eq!(cfg.hash(), RunConfig::reference().hash());
    assert_eq!(cfg.hash().len(), 12);
    let sweep = cfg.sweep_config().unwrap();
    assert_eq!(sweep.gamma_list, vec![0.4, 0.2, 0.1, 0.05]);
    assert_eq!(sweep.grid_n, 32);
}

#[test]
fn round_trip_through_toml() {
    let mut cfg = RunConfig::reference();
    cfg.time.dt_policy = DtPolicy::Fixed;
    cfg.time.dt = Some(1e-3);
    cfg.initial.preset = Preset::Random;
    cfg.initial.seed = 17;
    let text = cfg.to_toml();
    let back = RunConfig::parse(&text).unwrap();
    assert_eq!(back, cfg);
    assert_eq!(back.hash(), cfg.hash());
    assert_ne!(cfg.hash(), RunConfig::reference().hash());
}

#[test]
fn band_constant_out_of_range_names_its_line() {
    let text = REFERENCE.replace("K = 1.1", "K = 3.0");
    let err = RunConfig::parse(&text).unwrap_err();
    assert_eq!(err.line, locate_key(&text, "physics", "K"));
    assert_eq!(err.line, Some(8));
    assert!(err.to_string().starts_with("line 8: "));
}

#[test]
fn zero_gamma_is_rejected_with_line() {
    let text = REFERENCE.replace("gamma = 0.2", "gamma = 0.0");
    let err = RunConfig::parse(&text).unwrap_err();
    assert_eq!(err.line, Some(6));
    let text = REFERENCE.replace("[0.4, 0.2, 0.1, 0.05]", "[0.4, 0.0]");
    let err = RunConfig::parse(&text).unwrap_err();
    assert_eq!(err.line, Some(13));
}

#[test]
fn structural_errors() {
    let missing_sweep = REFERENCE.replace("[sweep]\ngamma_list = [0.4, 0.2, 0.1, 0.05]\n", "");
    let cfg = RunConfig::parse(&missing_sweep).unwrap();
    assert!(cfg.sweep_config().unwrap_err().message.contains("gamma_list"));

    let unknown = REFERENCE.replace("n = 32", "n = 32\nsize = 4");
    let err = RunConfig::parse(&unknown).unwrap_err();
    assert_eq!(err.line, Some(17));

    let not_increasing = REFERENCE.replace("[0.4, 0.2, 0.1, 0.05]", "[0.1, 0.2]");
    assert!(RunConfig::parse(&not_increasing).is_err());

    let fixed_without_dt = REFERENCE.replace("\"auto\"", "\"fixed\"");
    assert!(RunConfig::parse(&fixed_without_dt).unwrap_err().message.contains("requires dt"));

    let ragged = REFERENCE.replace("T = 0.25", "T = 0.26");
    assert!(RunConfig::parse(&ragged).unwrap_err().message.contains("multiple"));
}

#[test]
fn simulate_zero_horizon_writes_one_row_and_a_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", &small_config("dt_policy = \"auto\"", "reference", 0.0));
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "simulate", "--system", "nsm"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ledgers = files_with_prefix(dir.path(), "ledger_nsm_");
    assert_eq!(ledgers.len(), 1);
    let text = std::fs::read_to_string(&ledgers[0]).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# config_hash="));
    assert_eq!(lines[1], nsm_lab::ledger::LEDGER_HEADER);
    assert_eq!(lines.len(), 3);
    let snaps = files_with_prefix(dir.path(), "snapshot_nsm_");
    assert_eq!(snaps.len(), 1);
    let snap = Snapshot::read(std::fs::File::open(&snaps[0]).unwrap()).unwrap();
    let names: Vec<&str> = snap.fields.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["u", "B", "E", "j"]);
}

#[test]
fn fixed_step_above_the_stiffness_bound_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", &small_config("dt_policy = \"fixed\"\ndt = 0.02", "reference", 0.02));
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "simulate", "--system", "nsm"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("stiffness bound"), "{err}");
    assert!(files_with_prefix(dir.path(), "ledger_").is_empty());
}

#[test]
fn bad_config_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", &REFERENCE.replace("K = 1.1", "K = 3.0"));
    let out = bin().args(["--config", cfg.to_str().unwrap(), "sweep"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 8"));
}

#[test]
fn hall_simulation_and_band_analysis_of_its_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", &small_config("dt_policy = \"auto\"", "magnetic_only", 0.02));
    let out = bin()
        .env("NSM_LAB_OUT", dir.path())
        .args(["--config", cfg.to_str().unwrap(), "simulate", "--system", "hall"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let snaps = files_with_prefix(dir.path(), "snapshot_hall_");
    assert_eq!(snaps.len(), 3);
    let out = bin().args(["bands", snaps[2].to_str().unwrap()]).output().unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((json["time"].as_f64().unwrap() - 0.02).abs() < 1e-15);
    assert_eq!(json["bands"]["norms"].as_array().unwrap().len(), 5);
    assert!(json["high_freq_current"].as_f64().is_some());

    let out = bin().args(["bands", snaps[2].to_str().unwrap(), "--field", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_spectrum_small_run_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--out", dir.path().to_str().unwrap(), "verify-spectrum", "--samples", "200", "--radii", "20"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let reports = files_with_prefix(dir.path(), "spectrum_");
    assert_eq!(reports.len(), 1);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&reports[0]).unwrap()).unwrap();
    assert_eq!(json["report"]["eigen"]["violations"], 0);
    assert_eq!(json["report"]["bands"]["violations"], 0);
}

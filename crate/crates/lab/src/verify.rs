//! Spectrum verification driver: closed-form eigenvalues against a dense
//! numeric eigensolver, and the band eigenvalue estimates over the
//! standard parameter grid.

use nalgebra::Matrix6;
use nsm_core::spectral_maxwell::scan::{band_bounds_scan, standard_scan_grid, ScanSummary, HISTOGRAM_EDGES};
use nsm_core::{eigen_structure, maxwell_symbol, Complex64, PhysParams, Wavevector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Samples closer than this to the resonant shell (in `|discriminant|`)
/// are skipped: the eigenvalue problem is ill-conditioned there.
pub const SHELL_EXCLUSION: f64 = 1e-6;

pub fn numeric_eigenvalues(xi: &Wavevector, p: &PhysParams) -> Vec<Complex64> {
    let s = maxwell_symbol(xi, p);
    let m = Matrix6::from_fn(|i, j| s[i][j]);
    let schur = nalgebra::linalg::Schur::new(m);
    schur.eigenvalues().expect("complex Schur form is triangular").iter().copied().collect()
}

/// Match the five nonzero closed-form eigenvalues to distinct numeric
/// ones (nearest first); the leftover numeric value must vanish. Returns
/// the worst relative error, the leftover measured against the spectral
/// radius.
pub fn eigen_mismatch(xi: &Wavevector, p: &PhysParams) -> f64 {
    let es = eigen_structure(xi, p).expect("finite nonzero wavevector");
    let expected = [Complex64::new(es.lambda0, 0.0), es.lambda_plus, es.lambda_plus, es.lambda_minus, es.lambda_minus];
    let numeric = numeric_eigenvalues(xi, p);
    let mut used = [false; 6];
    let mut worst = 0.0f64;
    for e in &expected {
        let (idx, dist) = numeric
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, v)| (i, (v - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("six eigenvalues");
        used[idx] = true;
        worst = worst.max(dist / e.norm());
    }
    let radius = expected.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let leftover = numeric.iter().zip(used).find(|(_, u)| !u).map(|(v, _)| v.norm()).unwrap_or(0.0);
    worst.max(leftover / radius)
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenScanSummary {
    pub samples: usize,
    pub skipped_near_shell: usize,
    pub tolerance: f64,
    pub violations: usize,
    pub worst_relative_error: f64,
    /// Counts by `log10(relative error)`: `< -16`, `[-16,-14)`, ...,
    /// `[-10,-8)`, `>= -8`.
    pub error_histogram: [usize; 6],
}

/// `samples` random `(xi, beta, eta, gamma)`: `beta, eta in [0.5, 2]`,
/// `gamma in [0.05, 1]`, `|xi|` log-uniform within two decades of the
/// shell, direction uniform on the sphere.
pub fn eigen_scan(samples: usize, seed: u64, tolerance: f64) -> EigenScanSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = EigenScanSummary {
        samples: 0,
        skipped_near_shell: 0,
        tolerance,
        violations: 0,
        worst_relative_error: 0.0,
        error_histogram: [0; 6],
    };
    while out.samples < samples {
        let beta = rng.gen_range(0.5..2.0);
        let eta = rng.gen_range(0.5..2.0);
        let gamma = rng.gen_range(0.05..1.0);
        let p = PhysParams::with_physics(beta, eta, gamma).expect("sampled in range");
        let k = p.shell_radius() * 10f64.powf(rng.gen_range(-2.0..2.0));
        let d = loop {
            let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 1e-3 && n <= 1.0 {
                break v.map(|c| c / n);
            }
        };
        let xi = Wavevector::new(k * d[0], k * d[1], k * d[2]);
        if p.discriminant(xi.norm_sqr()).abs() < SHELL_EXCLUSION {
            out.skipped_near_shell += 1;
            continue;
        }
        out.samples += 1;
        let err = eigen_mismatch(&xi, &p);
        out.worst_relative_error = out.worst_relative_error.max(err);
        if !(err <= tolerance) {
            out.violations += 1;
        }
        let slot = if err <= 0.0 { 0 } else { ((err.log10() + 18.0) / 2.0).floor().clamp(0.0, 5.0) as usize };
        out.error_histogram[slot] += 1;
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub evaluated: usize,
    pub violations: usize,
    pub worst_relative_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BandScanReport {
    pub parameter_sets: usize,
    pub wavevectors: usize,
    pub evaluated: usize,
    pub violations: usize,
    pub gap_points: usize,
    pub per_check: Vec<CheckReport>,
    pub margin_histogram_edges_log10: Vec<f64>,
    /// Slot 0: exactly zero margin; slot 1: below the first edge; ...;
    /// last: at or above the last edge.
    pub margin_histogram: Vec<usize>,
}

impl From<(usize, ScanSummary)> for BandScanReport {
    fn from((sets, s): (usize, ScanSummary)) -> Self {
        BandScanReport {
            parameter_sets: sets,
            wavevectors: s.wavevectors,
            evaluated: s.evaluated,
            violations: s.violations,
            gap_points: s.gap_points,
            per_check: s
                .per_check
                .iter()
                .map(|c| CheckReport {
                    name: c.name.to_string(),
                    evaluated: c.evaluated,
                    violations: c.violations,
                    worst_relative_margin: c.worst_relative_margin,
                })
                .collect(),
            margin_histogram_edges_log10: HISTOGRAM_EDGES.to_vec(),
            margin_histogram: s.margin_histogram.to_vec(),
        }
    }
}

/// Band eigenvalue estimates on the standard grid derived from `base`.
pub fn band_estimate_scan(base: &PhysParams, samples_per_side: usize) -> BandScanReport {
    let grid = standard_scan_grid(base);
    (grid.len(), band_bounds_scan(&grid, samples_per_side)).into()
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub eigen: EigenScanSummary,
    pub bands: BandScanReport,
}

impl SpectrumReport {
    pub fn passes(&self) -> bool {
        self.eigen.violations == 0 && self.bands.violations == 0
    }
}

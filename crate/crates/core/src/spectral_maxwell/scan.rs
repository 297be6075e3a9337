//! Parameter scans of the eigenvalue estimates.

use alloc::vec::Vec;

use super::{band_bounds_check, Wavevector};
use crate::math;
use crate::params::PhysParams;

/// Buckets for `log10` of the relative margin of passing checks:
/// `< -12` (violations), `[-12, -10)`, ..., `[-2, 0)`, `>= 0` (margin at
/// least as large as the bound), plus one for exact zero.
pub const HISTOGRAM_EDGES: [f64; 7] = [-12.0, -10.0, -8.0, -6.0, -4.0, -2.0, 0.0];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckStats {
    pub name: &'static str,
    pub evaluated: usize,
    pub violations: usize,
    pub worst_relative_margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSummary {
    pub wavevectors: usize,
    pub evaluated: usize,
    pub violations: usize,
    pub gap_points: usize,
    pub per_check: Vec<CheckStats>,
    /// Counts of passing checks by `log10(relative margin)`; index 0 is
    /// exactly-zero margin, then one slot per interval of [`HISTOGRAM_EDGES`]
    /// (first slot below the first edge), last slot for margin >= 1.
    pub margin_histogram: [usize; 9],
}

impl ScanSummary {
    fn new() -> Self {
        ScanSummary { wavevectors: 0, evaluated: 0, violations: 0, gap_points: 0, per_check: Vec::new(), margin_histogram: [0; 9] }
    }

    fn record(&mut self, name: &'static str, passes: bool, rel: f64) {
        self.evaluated += 1;
        let stats = match self.per_check.iter_mut().position(|c| c.name == name) {
            Some(i) => &mut self.per_check[i],
            None => {
                self.per_check.push(CheckStats { name, evaluated: 0, violations: 0, worst_relative_margin: f64::INFINITY });
                self.per_check.last_mut().unwrap()
            }
        };
        stats.evaluated += 1;
        if rel < stats.worst_relative_margin {
            stats.worst_relative_margin = rel;
        }
        if !passes {
            stats.violations += 1;
            self.violations += 1;
            return;
        }
        let slot = if rel <= 0.0 {
            0
        } else {
            let l = math::ln(rel) / core::f64::consts::LN_10;
            1 + HISTOGRAM_EDGES.iter().take_while(|e| l >= **e).count()
        };
        self.margin_histogram[slot] += 1;
    }
}

/// A unit direction that changes from sample to sample (golden-angle spiral).
pub fn sample_direction(i: usize, n: usize) -> [f64; 3] {
    let golden = core::f64::consts::PI * (3.0 - math::sqrt(5.0));
    let z = 1.0 - 2.0 * ((i as f64) + 0.5) / (n.max(1) as f64);
    let r = math::sqrt((1.0 - z * z).max(0.0));
    let phi = golden * (i as f64);
    [r * libm::cos(phi), r * libm::sin(phi), z]
}

/// Evaluate the estimates at `samples` log-spaced radii below the shell
/// (`[shell * 1e-4, shell]`) and `samples` radii above it
/// (`[shell, shell * 1e4]`) for every parameter set.
pub fn band_bounds_scan(params: &[PhysParams], samples: usize) -> ScanSummary {
    let mut summary = ScanSummary::new();
    let decades = 4.0;
    for p in params {
        let shell = p.shell_radius();
        for side in [-1.0, 1.0] {
            for i in 0..samples {
                let frac = if samples == 1 { 1.0 } else { (i as f64) / ((samples - 1) as f64) };
                // side = -1: from 1e-4 shell up to shell; side = +1: shell to 1e4 shell.
                let exponent = if side < 0.0 { -decades * (1.0 - frac) } else { decades * frac };
                let k = shell * math::powf(10.0, exponent);
                let d = sample_direction(i, samples);
                let xi = Wavevector::new(k * d[0], k * d[1], k * d[2]);
                let Ok(report) = band_bounds_check(&xi, p) else { continue };
                summary.wavevectors += 1;
                if report.in_gap {
                    summary.gap_points += 1;
                }
                for c in &report.checks {
                    summary.record(c.name, c.passes(), c.relative_margin());
                }
            }
        }
    }
    summary
}

/// The parameter grid of the standard verification scan:
/// `beta, eta in {0.5, 1, 2}`, `gamma in {0.05, 0.1, 0.5, 1}`,
/// `K in {1.05, 1.1, sqrt(5)/2 - 0.01}`.
pub fn standard_scan_grid(base: &PhysParams) -> Vec<PhysParams> {
    let mut out = Vec::new();
    for beta in [0.5, 1.0, 2.0] {
        for eta in [0.5, 1.0, 2.0] {
            for gamma in [0.05, 0.1, 0.5, 1.0] {
                for k in [1.05, 1.1, crate::params::BAND_K_MAX - 0.01] {
                    out.push(PhysParams { beta, eta, gamma, band_k: k, ..*base });
                }
            }
        }
    }
    out
}

//! Eigenvalue estimates below and above the resonant shell.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::eigen::{raw_eigenvalues, raw_gap};
use super::{SpectralError, Wavevector};
use crate::math;
use crate::params::PhysParams;

/// Relative slack granted to every inequality, to absorb rounding at
/// wavevectors where the bound is attained.
pub const BOUNDS_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InequalityKind {
    /// `value <= bound`
    Upper,
    /// `value >= bound`
    Lower,
    /// `value == bound`
    Equal,
}

/// One evaluated estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inequality {
    pub name: &'static str,
    pub kind: InequalityKind,
    pub value: f64,
    pub bound: f64,
}

impl Inequality {
    /// Signed slack: nonnegative when the estimate holds exactly.
    pub fn margin(&self) -> f64 {
        match self.kind {
            InequalityKind::Upper => self.bound - self.value,
            InequalityKind::Lower => self.value - self.bound,
            InequalityKind::Equal => -math::abs(self.value - self.bound),
        }
    }

    /// Margin divided by the magnitude of the bound.
    pub fn relative_margin(&self) -> f64 {
        let scale = math::abs(self.bound).max(math::abs(self.value));
        if scale == 0.0 {
            0.0
        } else {
            self.margin() / scale
        }
    }

    pub fn passes(&self) -> bool {
        self.relative_margin() >= -BOUNDS_RTOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandBoundsReport {
    pub xi_norm: f64,
    /// `|xi| <= 1/(2 beta eta^2 gamma)`.
    pub below_shell: bool,
    /// `1/(2K beta eta^2 gamma) < |xi| < K/(2 beta eta^2 gamma)`: the refined
    /// estimates do not apply.
    pub in_gap: bool,
    pub checks: Vec<Inequality>,
}

impl BandBoundsReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(Inequality::passes)
    }

    pub fn worst_relative_margin(&self) -> Option<f64> {
        self.checks.iter().map(Inequality::relative_margin).reduce(f64::min)
    }
}

/// Explicit constant `C` in `|lambda_+/(lambda_- - lambda_+)| <= C gamma^2 |xi|^2`
/// for `|xi| <= 1/(2K beta eta^2 gamma)`:
/// `2 beta^2 eta^4 / (sqrt(1 - 1/K^2) (1 + sqrt(1 - 1/K^2)))`.
pub fn low_band_plus_constant(p: &PhysParams, k: f64) -> f64 {
    let be2 = p.beta_eta2();
    let r = math::sqrt(1.0 - 1.0 / (k * k));
    2.0 * be2 * be2 / (r * (1.0 + r))
}

/// Evaluate every applicable eigenvalue estimate at `xi`, using the band
/// constant `K = p.band_k` (which must satisfy `1 < K < 2`).
pub fn band_bounds_check(xi: &Wavevector, p: &PhysParams) -> Result<BandBoundsReport, SpectralError> {
    if !xi.is_finite() {
        return Err(SpectralError::NonFiniteWavevector);
    }
    if xi.is_zero() {
        return Err(SpectralError::ZeroWavevector);
    }
    let k_band = p.band_k;
    if !(k_band > 1.0 && k_band < 2.0) {
        return Err(SpectralError::BadBandConstant(k_band));
    }
    let k2 = xi.norm_sqr();
    let k = math::sqrt(k2);
    let be2 = p.beta_eta2();
    let g = p.gamma;
    let rate = p.damping_rate();
    let shell = p.shell_radius();
    let (lp, lm) = raw_eigenvalues(k2, p);
    let gap: Complex64 = raw_gap(k2, p); // lambda_- - lambda_+
    let ratio_bound = k_band / math::sqrt(k_band * k_band - 1.0);

    let mut checks = Vec::new();
    let below_shell = k <= shell;
    let lower_k = shell / k_band;
    let upper_k = shell * k_band;
    let in_gap = k > lower_k && k < upper_k;

    if below_shell {
        checks.push(Inequality { name: "lambda+ >= -2 beta eta^2 |xi|^2", kind: InequalityKind::Lower, value: lp.re, bound: -2.0 * be2 * k2 });
        checks.push(Inequality { name: "lambda+ <= -beta eta^2 |xi|^2", kind: InequalityKind::Upper, value: lp.re, bound: -be2 * k2 });
        checks.push(Inequality { name: "lambda- >= -1/(beta eta^2 gamma^2)", kind: InequalityKind::Lower, value: lm.re, bound: -rate });
        checks.push(Inequality { name: "lambda- <= -1/(2 beta eta^2 gamma^2)", kind: InequalityKind::Upper, value: lm.re, bound: -0.5 * rate });
        if k <= lower_k {
            checks.push(Inequality {
                name: "|lambda-/(lambda- - lambda+)| <= K/sqrt(K^2-1)",
                kind: InequalityKind::Upper,
                value: (lm / gap).norm(),
                bound: ratio_bound,
            });
            checks.push(Inequality {
                name: "|lambda+/(lambda- - lambda+)| <= C gamma^2 |xi|^2",
                kind: InequalityKind::Upper,
                value: (lp / gap).norm(),
                bound: low_band_plus_constant(p, k_band) * g * g * k2,
            });
        }
    } else {
        checks.push(Inequality { name: "|lambda+| = |xi|/gamma", kind: InequalityKind::Equal, value: lp.norm(), bound: k / g });
        checks.push(Inequality { name: "|lambda-| = |xi|/gamma", kind: InequalityKind::Equal, value: lm.norm(), bound: k / g });
        checks.push(Inequality { name: "Re lambda+ = -1/(2 beta eta^2 gamma^2)", kind: InequalityKind::Equal, value: lp.re, bound: -0.5 * rate });
        checks.push(Inequality { name: "Re lambda- = -1/(2 beta eta^2 gamma^2)", kind: InequalityKind::Equal, value: lm.re, bound: -0.5 * rate });
        if k >= upper_k {
            let half = 0.5 * ratio_bound;
            checks.push(Inequality { name: "|lambda+/(lambda- - lambda+)| <= K/(2 sqrt(K^2-1))", kind: InequalityKind::Upper, value: (lp / gap).norm(), bound: half });
            checks.push(Inequality { name: "|lambda-/(lambda- - lambda+)| <= K/(2 sqrt(K^2-1))", kind: InequalityKind::Upper, value: (lm / gap).norm(), bound: half });
            checks.push(Inequality {
                name: "|1/(lambda- - lambda+)| <= K/(2 sqrt(K^2-1)) gamma/|xi|",
                kind: InequalityKind::Upper,
                value: 1.0 / gap.norm(),
                bound: half * g / k,
            });
        }
    }
    Ok(BandBoundsReport { xi_norm: k, below_shell, in_gap, checks })
}

/// Largest `omega` such that
/// `|exp(t lambda_+) (1 - exp(t (lambda_- - lambda_+))) / (t (lambda_- - lambda_+))| <= exp(-omega t / gamma^2)`
/// holds at every sampled `(|xi|, t)` with `|xi|` in the middle band
/// `(1/(2K beta eta^2 gamma), K/(2 beta eta^2 gamma)]` and
/// `t` in `(0, t_max]`.
///
/// No closed form for this constant is known; this only records the
/// empirical value on the sampled set.
pub fn empirical_omega(p: &PhysParams, radial_samples: usize, time_samples: usize, t_max: f64) -> f64 {
    let shell = p.shell_radius();
    let lo = shell / p.band_k;
    let hi = shell * p.band_k;
    let g2 = p.gamma * p.gamma;
    let mut omega = f64::INFINITY;
    for i in 1..=radial_samples {
        let k = lo + (hi - lo) * (i as f64) / (radial_samples as f64);
        let k2 = k * k;
        let (lp, _) = raw_eigenvalues(k2, p);
        let gap = raw_gap(k2, p);
        for j in 1..=time_samples {
            let t = t_max * (j as f64) / (time_samples as f64);
            let value = if gap.norm() == 0.0 {
                math::cexp(lp * t).norm()
            } else {
                (math::cexp(lp * t) * math::cexpm1(gap * t) / (gap * t)).norm()
            };
            let w = -g2 * math::ln(value) / t;
            if w < omega {
                omega = w;
            }
        }
    }
    omega
}

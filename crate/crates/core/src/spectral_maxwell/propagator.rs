use num_complex::Complex64;

use super::eigen::{raw_eigenvalues, raw_gap, RESONANCE_TOL};
use super::{ModePair, SpectralError, Wavevector};
use crate::math;
use crate::params::PhysParams;
use crate::vec3::CVec3;

/// `exp(t A(xi))` at one wavevector, with its scalar coefficients
/// precomputed so it can be applied to many mode pairs.
///
/// On the transverse subspace `{xi . e = xi . b = 0}` the symbol `M`
/// satisfies `M^2 = -(1/(beta eta^2 gamma^2)) M - (|xi|^2/gamma^2) I`, so
///
/// ```text
/// exp(tM) = alpha I + sigma M,
/// sigma   = (exp(t lambda_+) - exp(t lambda_-)) / (lambda_+ - lambda_-),
/// alpha   = exp(t lambda_+) - sigma lambda_+,
/// ```
///
/// which is the spectral-projector form of the eigendecomposition. On the
/// resonant shell the Jordan limit `sigma = t exp(t lambda_1)` is used. The
/// longitudinal electric part decays with `exp(t lambda_0)`; the
/// longitudinal magnetic part is left untouched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePropagator {
    xi: [f64; 3],
    inv_gamma: f64,
    damping: f64,
    parallel_decay: f64,
    alpha: Complex64,
    sigma: Complex64,
}

impl ModePropagator {
    pub fn new(xi: &Wavevector, p: &PhysParams, t: f64) -> Result<Self, SpectralError> {
        if !(t >= 0.0) {
            return Err(SpectralError::NegativeTime(t));
        }
        if !xi.is_finite() {
            return Err(SpectralError::NonFiniteWavevector);
        }
        let damping = p.damping_rate();
        let parallel_decay = math::exp(-damping * t);
        let k2 = xi.norm_sqr();
        let (alpha, sigma) = if k2 == 0.0 {
            // e' = -damping e, b' = 0: eigenvalues 0 and -damping.
            (Complex64::new(1.0, 0.0), Complex64::new(-math::expm1(-damping * t) / damping, 0.0))
        } else if math::abs(p.discriminant(k2)) < RESONANCE_TOL {
            let l1 = -0.5 * damping;
            let decay = math::exp(l1 * t);
            (Complex64::new(decay * (1.0 - t * l1), 0.0), Complex64::new(t * decay, 0.0))
        } else {
            let (lp, _) = raw_eigenvalues(k2, p);
            // lambda_+ - lambda_-; real part >= 0 so exp(-t gap) never overflows.
            let gap = -raw_gap(k2, p);
            let ep = math::cexp(lp * t);
            let sigma = -ep * math::cexpm1(-gap * t) / gap;
            (ep - sigma * lp, sigma)
        };
        Ok(ModePropagator { xi: xi.xi, inv_gamma: 1.0 / p.gamma, damping, parallel_decay, alpha, sigma })
    }

    pub fn apply(&self, mode: &ModePair) -> ModePair {
        let e_par = mode.e.parallel_to(&self.xi);
        let b_par = mode.b.parallel_to(&self.xi);
        let e_perp = mode.e - e_par;
        let b_perp = mode.b - b_par;
        let i_over_gamma = Complex64::new(0.0, self.inv_gamma);
        // M (e_perp, b_perp)
        let me = e_perp * (-self.damping) + b_perp.crossed_by(&self.xi) * i_over_gamma;
        let mb = e_perp.crossed_by(&self.xi) * (-i_over_gamma);
        ModePair {
            e: e_par * self.parallel_decay + e_perp * self.alpha + me * self.sigma,
            b: b_par + b_perp * self.alpha + mb * self.sigma,
        }
    }

    /// Apply to the transverse fields only, assuming `xi . e = xi . b = 0`.
    #[inline]
    pub fn apply_transverse(&self, e: &CVec3, b: &CVec3) -> (CVec3, CVec3) {
        let i_over_gamma = Complex64::new(0.0, self.inv_gamma);
        let me = *e * (-self.damping) + b.crossed_by(&self.xi) * i_over_gamma;
        let mb = e.crossed_by(&self.xi) * (-i_over_gamma);
        (*e * self.alpha + me * self.sigma, *b * self.alpha + mb * self.sigma)
    }
}

/// `exp(t A(xi)) (e, b)`.
pub fn propagate_mode(t: f64, mode: &ModePair, xi: &Wavevector, p: &PhysParams) -> Result<ModePair, SpectralError> {
    Ok(ModePropagator::new(xi, p, t)?.apply(mode))
}

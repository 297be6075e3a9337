use num_complex::Complex64;

use super::{SpectralError, Wavevector};
use crate::math;
use crate::params::PhysParams;
use crate::vec3::CVec3;

/// `|1 - 4 beta^2 eta^4 gamma^2 |xi|^2|` below which a wavevector is treated
/// as lying on the resonant shell.
pub const RESONANCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `|xi| < 1/(2 beta eta^2 gamma)`: both nontrivial eigenvalues real.
    SubResonant,
    /// `|xi| = 1/(2 beta eta^2 gamma)` within [`RESONANCE_TOL`]: a Jordan block.
    ResonantShell,
    /// `|xi| > 1/(2 beta eta^2 gamma)`: complex-conjugate pair.
    SuperResonant,
}

/// Closed-form spectral data of `A(xi)` at one nonzero wavevector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenStructure {
    pub xi: Wavevector,
    pub gamma: f64,
    /// `-1/(beta eta^2 gamma^2)`, eigenvalue of `(xi, 0)`.
    pub lambda0: f64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
    /// `(lambda_- - lambda_+)/lambda_-`; `None` on the resonant shell.
    pub mixing_s: Option<Complex64>,
    pub regime: Regime,
    /// `1 - 4 beta^2 eta^4 gamma^2 |xi|^2`.
    pub discriminant: f64,
}

/// `(lambda_+, lambda_-)` from the closed form, without snapping to the
/// resonant shell.
///
/// Below the shell `lambda_+` uses the rationalized form
/// `-2 beta eta^2 |xi|^2 / (1 + sqrt(D))`, which stays accurate as
/// `gamma |xi| -> 0`.
pub fn raw_eigenvalues(k2: f64, p: &PhysParams) -> (Complex64, Complex64) {
    let be2 = p.beta_eta2();
    let denom = 2.0 * be2 * p.gamma * p.gamma;
    let d = p.discriminant(k2);
    if d >= 0.0 {
        let sd = math::sqrt(d);
        let plus = -2.0 * be2 * k2 / (1.0 + sd);
        let minus = -(1.0 + sd) / denom;
        (Complex64::new(plus, 0.0), Complex64::new(minus, 0.0))
    } else {
        let sd = math::sqrt(-d);
        (Complex64::new(-1.0 / denom, sd / denom), Complex64::new(-1.0 / denom, -sd / denom))
    }
}

/// `lambda_- - lambda_+` computed directly from `sqrt(D)`.
pub(crate) fn raw_gap(k2: f64, p: &PhysParams) -> Complex64 {
    let d = p.discriminant(k2);
    let scale = p.damping_rate();
    if d >= 0.0 {
        Complex64::new(-math::sqrt(d) * scale, 0.0)
    } else {
        Complex64::new(0.0, -math::sqrt(-d) * scale)
    }
}

pub fn eigen_structure(xi: &Wavevector, p: &PhysParams) -> Result<EigenStructure, SpectralError> {
    if !xi.is_finite() {
        return Err(SpectralError::NonFiniteWavevector);
    }
    if xi.is_zero() {
        return Err(SpectralError::ZeroWavevector);
    }
    let k2 = xi.norm_sqr();
    let d = p.discriminant(k2);
    let lambda0 = -p.damping_rate();
    if math::abs(d) < RESONANCE_TOL {
        let l1 = Complex64::new(0.5 * lambda0, 0.0);
        return Ok(EigenStructure {
            xi: *xi,
            gamma: p.gamma,
            lambda0,
            lambda_plus: l1,
            lambda_minus: l1,
            mixing_s: None,
            regime: Regime::ResonantShell,
            discriminant: d,
        });
    }
    let (lambda_plus, lambda_minus) = raw_eigenvalues(k2, p);
    let mixing_s = raw_gap(k2, p) / lambda_minus;
    Ok(EigenStructure {
        xi: *xi,
        gamma: p.gamma,
        lambda0,
        lambda_plus,
        lambda_minus,
        mixing_s: Some(mixing_s),
        regime: if d > 0.0 { Regime::SubResonant } else { Regime::SuperResonant },
        discriminant: d,
    })
}

impl EigenStructure {
    /// `-(i/(gamma lambda)) xi x v`.
    fn partner(&self, v: &CVec3, lambda: Complex64) -> CVec3 {
        let c = Complex64::new(0.0, -1.0) / (lambda * self.gamma);
        v.crossed_by(&self.xi.xi) * c
    }

    /// Element of the `lambda_+` eigenspace with electric part `e` (`xi . e = 0`).
    pub fn plus_from_e(&self, e: CVec3) -> super::ModePair {
        super::ModePair { b: self.partner(&e, self.lambda_plus), e }
    }

    /// Element of the `lambda_+` eigenspace with magnetic part `b` (`xi . b = 0`).
    pub fn plus_from_b(&self, b: CVec3) -> super::ModePair {
        super::ModePair { e: self.partner(&b, self.lambda_minus), b }
    }

    /// Element of the `lambda_-` eigenspace with electric part `e` (`xi . e = 0`).
    pub fn minus_from_e(&self, e: CVec3) -> super::ModePair {
        super::ModePair { b: self.partner(&e, self.lambda_minus), e }
    }

    /// Element of the `lambda_-` eigenspace with magnetic part `b` (`xi . b = 0`).
    pub fn minus_from_b(&self, b: CVec3) -> super::ModePair {
        super::ModePair { e: self.partner(&b, self.lambda_plus), b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PhysParams {
        PhysParams { beta: 1.0, eta: 1.0, gamma: 1.0, sobolev_s: 0.75, band_k: 1.1, band_r: 4.0, band_delta: 1.5 }
    }

    #[test]
    fn sub_resonant_values() {
        let es = eigen_structure(&Wavevector::new(0.3, 0.0, 0.0), &unit()).unwrap();
        assert_eq!(es.regime, Regime::SubResonant);
        assert!((es.lambda_plus.re + 0.1).abs() < 1e-15);
        assert!((es.lambda_minus.re + 0.9).abs() < 1e-15);
        assert_eq!(es.lambda0, -1.0);
        // s = (-0.9 + 0.1)/(-0.9)
        let s = es.mixing_s.unwrap();
        assert!((s.re - 0.8 / 0.9).abs() < 1e-15);
    }

    #[test]
    fn shell_is_degenerate() {
        let es = eigen_structure(&Wavevector::new(0.0, 0.5, 0.0), &unit()).unwrap();
        assert_eq!(es.regime, Regime::ResonantShell);
        assert_eq!(es.lambda_plus, Complex64::new(-0.5, 0.0));
        assert_eq!(es.lambda_minus, Complex64::new(-0.5, 0.0));
        assert!(es.mixing_s.is_none());
    }

    #[test]
    fn super_resonant_modulus() {
        let es = eigen_structure(&Wavevector::new(0.0, 0.0, 1.0), &unit()).unwrap();
        assert_eq!(es.regime, Regime::SuperResonant);
        assert!((es.lambda_plus.norm() - 1.0).abs() < 1e-15);
        assert!((es.lambda_minus.norm() - 1.0).abs() < 1e-15);
        assert_eq!(es.lambda_plus.re, -0.5);
        assert_eq!(es.lambda_plus, es.lambda_minus.conj());
    }

    #[test]
    fn zero_wavevector_rejected() {
        assert_eq!(eigen_structure(&Wavevector::ZERO, &unit()), Err(SpectralError::ZeroWavevector));
        assert_eq!(
            eigen_structure(&Wavevector::new(f64::NAN, 0.0, 0.0), &unit()),
            Err(SpectralError::NonFiniteWavevector)
        );
    }

    #[test]
    fn tiny_wavevector_keeps_relative_accuracy() {
        let p = PhysParams { gamma: 0.05, ..unit() };
        let es = eigen_structure(&Wavevector::new(1e-7, 0.0, 0.0), &p).unwrap();
        // lambda_+ ~ -beta eta^2 |xi|^2 (1 + beta^2 eta^4 gamma^2 |xi|^2 + ...)
        assert!((es.lambda_plus.re / -1e-14 - 1.0).abs() < 1e-14);
    }
}

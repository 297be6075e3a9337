//! Physical and analysis constants.

use core::fmt;

use crate::math;

/// Upper end of the admissible band constant interval, `sqrt(5)/2`.
pub const BAND_K_MAX: f64 = 1.118_033_988_749_895;

/// The constants governing every formula in the crate.
///
/// `beta`, `eta`, `gamma` enter the equations; `sobolev_s`, `band_k`,
/// `band_r` and `band_delta` only parameterize diagnostics and estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhysParams {
    /// Collision / relaxation coefficient.
    pub beta: f64,
    /// Ratio of the charge current scale to the species current scale.
    pub eta: f64,
    /// Ratio of fluid velocity to the speed of light, in `(0, 1]`.
    pub gamma: f64,
    /// Regularity exponent, in `(1/2, 1)`.
    pub sobolev_s: f64,
    /// Band constant `K`, in `(1, sqrt(5)/2)`.
    pub band_k: f64,
    /// Low-frequency radius `R`.
    pub band_r: f64,
    /// High-frequency cutoff parameter.
    pub band_delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamError {
    NotPositive { name: &'static str, value: f64 },
    OutOfRange { name: &'static str, value: f64, lo: f64, hi: f64 },
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::NotPositive { name, value } => {
                write!(f, "{name} must be a positive finite number, got {value}")
            }
            ParamError::OutOfRange { name, value, lo, hi } => {
                write!(f, "{name} = {value} is outside the admissible interval ({lo}, {hi})")
            }
        }
    }
}

impl core::error::Error for ParamError {}

fn positive(name: &'static str, value: f64) -> Result<(), ParamError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ParamError::NotPositive { name, value })
    }
}

fn open_interval(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<(), ParamError> {
    if value.is_finite() && value > lo && value < hi {
        Ok(())
    } else {
        Err(ParamError::OutOfRange { name, value, lo, hi })
    }
}

impl PhysParams {
    /// Validating constructor.
    pub fn new(
        beta: f64,
        eta: f64,
        gamma: f64,
        sobolev_s: f64,
        band_k: f64,
        band_r: f64,
        band_delta: f64,
    ) -> Result<Self, ParamError> {
        let p = PhysParams { beta, eta, gamma, sobolev_s, band_k, band_r, band_delta };
        p.validate()?;
        Ok(p)
    }

    /// `beta`, `eta`, `gamma` as given, analysis constants at their defaults
    /// (`s = 3/4`, `K = 1.1`, `R = 2`, `delta = 1.5`).
    pub fn with_physics(beta: f64, eta: f64, gamma: f64) -> Result<Self, ParamError> {
        Self::new(beta, eta, gamma, 0.75, 1.1, 2.0, 1.5)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        positive("beta", self.beta)?;
        positive("eta", self.eta)?;
        positive("gamma", self.gamma)?;
        if self.gamma > 1.0 {
            return Err(ParamError::OutOfRange { name: "gamma", value: self.gamma, lo: 0.0, hi: 1.0 });
        }
        open_interval("s", self.sobolev_s, 0.5, 1.0)?;
        open_interval("K", self.band_k, 1.0, BAND_K_MAX)?;
        positive("R", self.band_r)?;
        positive("delta", self.band_delta)?;
        Ok(())
    }

    /// Copy with a different `gamma` (not re-validated).
    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    /// `beta * eta^2`, the resistivity of the limiting system.
    #[inline]
    pub fn beta_eta2(&self) -> f64 {
        self.beta * self.eta * self.eta
    }

    /// `1 / (beta eta^2 gamma^2)`: the damping rate of the electric field,
    /// i.e. `-lambda_0`.
    #[inline]
    pub fn damping_rate(&self) -> f64 {
        1.0 / (self.beta_eta2() * self.gamma * self.gamma)
    }

    /// Radius `1/(2 beta eta^2 gamma)` of the resonant shell.
    #[inline]
    pub fn shell_radius(&self) -> f64 {
        1.0 / (2.0 * self.beta_eta2() * self.gamma)
    }

    /// `1 - 4 beta^2 eta^4 gamma^2 |xi|^2` for `|xi|^2 = k2`.
    #[inline]
    pub fn discriminant(&self, k2: f64) -> f64 {
        let b = self.beta_eta2() * self.gamma;
        1.0 - 4.0 * b * b * k2
    }

    /// High-frequency cutoff `phi(gamma/delta)` with
    /// `phi(x) = x^(2/(2s-3))`.
    #[inline]
    pub fn high_cutoff(&self) -> f64 {
        phi(self.gamma / self.band_delta, self.sobolev_s)
    }
}

/// `phi(x) = x^(2/(2s-3))`.
#[inline]
pub fn phi(x: f64, sobolev_s: f64) -> f64 {
    math::powf(x, 2.0 / (2.0 * sobolev_s - 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let p = PhysParams::with_physics(1.0, 1.0, 0.2).unwrap();
        assert_eq!(p.band_k, 1.1);
        assert!((p.damping_rate() - 25.0).abs() < 1e-12);
        assert!((p.shell_radius() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_zero_gamma_and_wide_k() {
        assert!(matches!(
            PhysParams::with_physics(1.0, 1.0, 0.0),
            Err(ParamError::NotPositive { name: "gamma", .. })
        ));
        assert!(matches!(
            PhysParams::new(1.0, 1.0, 0.5, 0.75, 3.0, 4.0, 1.5),
            Err(ParamError::OutOfRange { name: "K", .. })
        ));
        // 1.2 is admissible for 1 < K < 2 but not for the tighter interval.
        assert!(PhysParams::new(1.0, 1.0, 0.5, 0.75, 1.2, 4.0, 1.5).is_err());
        assert!(PhysParams::new(1.0, 1.0, 0.5, 1.0, 1.1, 4.0, 1.5).is_err());
        assert!(PhysParams::new(1.0, 1.0, 1.5, 0.75, 1.1, 4.0, 1.5).is_err());
        assert!(PhysParams::new(f64::NAN, 1.0, 0.5, 0.75, 1.1, 4.0, 1.5).is_err());
    }

    #[test]
    fn high_cutoff_grows_as_gamma_shrinks() {
        let p = PhysParams::with_physics(1.0, 1.0, 0.2).unwrap();
        let a = p.high_cutoff();
        let b = p.with_gamma(0.1).high_cutoff();
        assert!(b > a);
        // s = 3/4: exponent -4/3, (0.1/1.5)^(-4/3)
        assert!((b - libm::pow(0.1 / 1.5, -4.0 / 3.0)).abs() < 1e-12);
    }
}

use core::fmt;

use num_complex::Complex64;

use super::{eigen_structure, ModePair, Regime, SpectralError, Wavevector};
use crate::params::PhysParams;
use crate::vec3::CVec3;

/// Splitting of a mode pair along the three eigenspaces of `A(xi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSplit {
    /// `(xi (xi . e)/|xi|^2, 0)`, the `lambda_0` component.
    pub parallel_part: ModePair,
    /// `(-(i/(gamma lambda_-)) xi x b, b)`, in the `lambda_+` eigenspace.
    pub b_part: ModePair,
    /// `(e, -(i/(gamma lambda_-)) xi x e)`, in the `lambda_-` eigenspace.
    pub e_part: ModePair,
    /// `s e`, the rescaled electric amplitude.
    pub scaled_e: CVec3,
    /// `s b`, the rescaled magnetic amplitude.
    pub scaled_b: CVec3,
    pub mixing_s: Complex64,
}

impl ModeSplit {
    pub fn recompose(&self) -> ModePair {
        self.parallel_part + self.b_part + self.e_part
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecomposeError {
    Spectral(SpectralError),
    /// `A(xi)` is not diagonalizable on the shell.
    ResonantShell,
    /// `xi . b != 0`: the pair is outside the constrained subspace.
    NotDivergenceFree { relative: f64 },
}

impl From<SpectralError> for DecomposeError {
    fn from(e: SpectralError) -> Self {
        DecomposeError::Spectral(e)
    }
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::Spectral(e) => write!(f, "{e}"),
            DecomposeError::ResonantShell => write!(f, "eigenbasis splitting is undefined on the resonant shell"),
            DecomposeError::NotDivergenceFree { relative } => {
                write!(f, "magnetic amplitude is not transverse (|xi.b|/(|xi||b|) = {relative:e})")
            }
        }
    }
}

impl core::error::Error for DecomposeError {}

const TRANSVERSE_TOL: f64 = 1e-12;

/// Split `(e_hat, b_hat)` into its `lambda_0`, `lambda_+` and `lambda_-`
/// components:
///
/// ```text
/// s e = e_perp + (i/(gamma lambda_-)) xi x b_hat
/// s b = b_hat  + (i/(gamma lambda_-)) xi x e_hat
/// ```
///
/// with `s = (lambda_- - lambda_+)/lambda_-` and `e_perp` the part of
/// `e_hat` orthogonal to `xi`.
pub fn decompose_initial(mode: &ModePair, xi: &Wavevector, p: &PhysParams) -> Result<ModeSplit, DecomposeError> {
    let es = eigen_structure(xi, p)?;
    if es.regime == Regime::ResonantShell {
        return Err(DecomposeError::ResonantShell);
    }
    let s = es.mixing_s.ok_or(DecomposeError::ResonantShell)?;
    let k = xi.norm();
    let b_norm = mode.b.norm();
    let along = mode.b.dot_real(&xi.xi).norm();
    if along > TRANSVERSE_TOL * k * b_norm + f64::MIN_POSITIVE {
        return Err(DecomposeError::NotDivergenceFree { relative: along / (k * b_norm) });
    }

    let e_par = mode.e.parallel_to(&xi.xi);
    let e_perp = mode.e - e_par;
    let coupling = Complex64::new(0.0, 1.0) / (es.lambda_minus * p.gamma);
    let scaled_e = e_perp + mode.b.crossed_by(&xi.xi) * coupling;
    let scaled_b = mode.b + mode.e.crossed_by(&xi.xi) * coupling;
    let inv_s = Complex64::new(1.0, 0.0) / s;
    let e = scaled_e * inv_s;
    let b = scaled_b * inv_s;

    Ok(ModeSplit {
        parallel_part: ModePair::new(e_par, CVec3::ZERO),
        b_part: ModePair::new(b.crossed_by(&xi.xi) * (-coupling), b),
        e_part: ModePair::new(e, e.crossed_by(&xi.xi) * (-coupling)),
        scaled_e,
        scaled_b,
        mixing_s: s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PhysParams {
        PhysParams { beta: 1.0, eta: 1.0, gamma: 1.0, sobolev_s: 0.75, band_k: 1.1, band_r: 4.0, band_delta: 1.5 }
    }

    #[test]
    fn longitudinal_electric_only() {
        let xi = Wavevector::new(0.3, 0.0, 0.0);
        let mode = ModePair::new(CVec3::from_real([2.0, 0.0, 0.0]), CVec3::ZERO);
        let split = decompose_initial(&mode, &xi, &unit()).unwrap();
        assert_eq!(split.parallel_part, mode);
        assert!(split.b_part.norm() < 1e-15);
        assert!(split.e_part.norm() < 1e-15);
    }

    #[test]
    fn lambda_plus_eigenmode_lands_in_b_part() {
        let p = unit();
        let xi = Wavevector::new(0.3, 0.0, 0.0);
        let es = eigen_structure(&xi, &p).unwrap();
        let mode = es.plus_from_b(CVec3::new(0.0.into(), Complex64::new(0.4, -0.2), 1.0.into()));
        let split = decompose_initial(&mode, &xi, &p).unwrap();
        assert!((split.b_part - mode).norm() < 1e-14);
        assert!(split.e_part.norm() < 1e-14);
        assert!(split.parallel_part.norm() < 1e-14);
    }

    #[test]
    fn shell_and_longitudinal_b_are_rejected() {
        let p = unit();
        let mode = ModePair::new(CVec3::from_real([0.0, 1.0, 0.0]), CVec3::ZERO);
        assert_eq!(
            decompose_initial(&mode, &Wavevector::new(0.5, 0.0, 0.0), &p),
            Err(DecomposeError::ResonantShell)
        );
        let bad = ModePair::new(CVec3::ZERO, CVec3::from_real([1.0, 0.0, 0.0]));
        assert!(matches!(
            decompose_initial(&bad, &Wavevector::new(0.3, 0.0, 0.0), &p),
            Err(DecomposeError::NotDivergenceFree { .. })
        ));
        assert_eq!(
            decompose_initial(&mode, &Wavevector::ZERO, &p),
            Err(DecomposeError::Spectral(SpectralError::ZeroWavevector))
        );
    }
}

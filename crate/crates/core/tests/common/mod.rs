//! Oracles independent of the closed forms: numeric eigenvalues of the
//! dense symbol and a fixed-step RK4 integration of `y' = A(xi) y`.
#![allow(dead_code)]

use nalgebra::{Matrix6, Vector6};
use nsm_core::spectral_maxwell::SymbolMatrix;
use nsm_core::{maxwell_symbol, Complex64, ModePair, PhysParams, Wavevector};

pub fn to_matrix(m: &SymbolMatrix) -> Matrix6<Complex64> {
    Matrix6::from_fn(|i, j| m[i][j])
}

pub fn numeric_eigenvalues(xi: &Wavevector, p: &PhysParams) -> Vec<Complex64> {
    let m = to_matrix(&maxwell_symbol(xi, p));
    let schur = nalgebra::linalg::Schur::new(m);
    schur.eigenvalues().expect("complex Schur form is triangular").iter().copied().collect()
}

/// Integrate `y' = A y` from 0 to `t` with classical RK4 and step at most `h`.
pub fn rk4_reference(t: f64, mode: &ModePair, xi: &Wavevector, p: &PhysParams, h: f64) -> ModePair {
    let a = to_matrix(&maxwell_symbol(xi, p));
    let mut y = Vector6::from_column_slice(&mode.to_array());
    let steps = (t / h).ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    for _ in 0..steps {
        let k1 = a * y;
        let k2 = a * (y + k1 * Complex64::from(0.5 * dt));
        let k3 = a * (y + k2 * Complex64::from(0.5 * dt));
        let k4 = a * (y + k3 * Complex64::from(dt));
        y += (k1 + k2 * Complex64::from(2.0) + k3 * Complex64::from(2.0) + k4) * Complex64::from(dt / 6.0);
    }
    ModePair::from_array([y[0], y[1], y[2], y[3], y[4], y[5]])
}

/// Match each expected value to a distinct nearest numeric eigenvalue and
/// return the worst relative error.
pub fn worst_relative_match(expected: &[Complex64], numeric: &[Complex64]) -> f64 {
    let mut used = vec![false; numeric.len()];
    let mut worst = 0.0f64;
    for e in expected {
        let (idx, _) = numeric
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, v)| (i, (v - e).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        used[idx] = true;
        let rel = (numeric[idx] - e).norm() / e.norm().max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
    }
    worst
}

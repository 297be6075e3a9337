use num_complex::Complex64;

use super::Wavevector;
use crate::params::PhysParams;

/// Dense 6x6 complex matrix acting on `(e_x, e_y, e_z, b_x, b_y, b_z)`.
pub type SymbolMatrix = [[Complex64; 6]; 6];

/// Matrix of `v -> xi x v`.
fn cross_matrix(xi: &[f64; 3]) -> [[f64; 3]; 3] {
    [[0.0, -xi[2], xi[1]], [xi[2], 0.0, -xi[0]], [-xi[1], xi[0], 0.0]]
}

/// The Fourier symbol `A(xi)` as a dense matrix.
///
/// Only used as an oracle target and for diagnostics; propagation goes
/// through the closed forms in [`super::ModePropagator`].
pub fn maxwell_symbol(xi: &Wavevector, p: &PhysParams) -> SymbolMatrix {
    let zero = Complex64::new(0.0, 0.0);
    let mut m = [[zero; 6]; 6];
    let damping = -p.damping_rate();
    let k = cross_matrix(&xi.xi);
    let c = Complex64::new(0.0, 1.0 / p.gamma);
    for i in 0..3 {
        m[i][i] = Complex64::new(damping, 0.0);
        for j in 0..3 {
            m[i][3 + j] = c * k[i][j];
            m[3 + i][j] = -c * k[i][j];
        }
    }
    m
}

//! Oracles shared by the integration tests. None of them go through the FFT
//! or the Picard iteration.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use nsm_lab::fields::random::solenoidal;
use nsm_lab::fields::{Grid, SpectralField};
use nsm_lab::nsm_core::{Complex64, PhysParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn masked_modes(grid: &Grid) -> Vec<usize> {
    (0..grid.len()).filter(|i| grid.dealias_mask()[*i]).collect()
}

fn cross_basis(b: usize, v: [Complex64; 3]) -> [Complex64; 3] {
    // e_b x v
    let z = Complex64::new(0.0, 0.0);
    match b {
        0 => [z, -v[2], v[1]],
        1 => [v[2], z, -v[0]],
        _ => [-v[1], v[0], z],
    }
}

fn project(xi: [f64; 3], v: [Complex64; 3]) -> [Complex64; 3] {
    let k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if k2 == 0.0 {
        return v;
    }
    let d = (v[0] * xi[0] + v[1] * xi[1] + v[2] * xi[2]) / k2;
    [v[0] - d * xi[0], v[1] - d * xi[1], v[2] - d * xi[2]]
}

fn mode(f: &SpectralField, idx: usize) -> [Complex64; 3] {
    [f.comps[0][idx], f.comps[1][idx], f.comps[2][idx]]
}

/// Masked `a x b` by direct convolution over the dealiasing cube. Exact
/// (alias-free) when three cube half-widths fit inside `n`.
pub fn convolution_cross(a: &SpectralField, b: &SpectralField) -> SpectralField {
    let g = &a.grid;
    let modes = masked_modes(g);
    let scale = 1.0 / g.len() as f64;
    let mut out = SpectralField::zeros(g);
    for &k in &modes {
        let wk = g.integer_wavevector(k);
        let mut acc = [Complex64::new(0.0, 0.0); 3];
        for &p in &modes {
            let wp = g.integer_wavevector(p);
            let wq = [wk[0] - wp[0], wk[1] - wp[1], wk[2] - wp[2]];
            let Some(q) = in_cube(g, wq) else { continue };
            let x = mode(a, p);
            let y = mode(b, q);
            acc[0] += x[1] * y[2] - x[2] * y[1];
            acc[1] += x[2] * y[0] - x[0] * y[2];
            acc[2] += x[0] * y[1] - x[1] * y[0];
        }
        for c in 0..3 {
            out.comps[c][k] = acc[c] * scale;
        }
    }
    out.div_free = false;
    out
}

fn in_cube(g: &Grid, w: [i64; 3]) -> Option<usize> {
    let half = (g.n() / 2) as i64;
    if w.iter().any(|c| c.abs() >= half) {
        return None;
    }
    let idx = g.index_of(w);
    g.dealias_mask()[idx].then_some(idx)
}

/// Solve `beta eta j + P(j x B) = (1/eta) P(E + u x B)` as one dense complex
/// linear system over the dealiasing cube; outside the cube the product
/// term vanishes and `j = F/(beta eta)`.
pub fn dense_ohm_solution(u: &SpectralField, b: &SpectralField, e: &SpectralField, p: &PhysParams) -> SpectralField {
    let g = &u.grid;
    let be = p.beta * p.eta;
    let uxb = convolution_cross(u, b);
    let mut forcing = SpectralField::zeros(g);
    for idx in 0..g.len() {
        let v = mode(e, idx);
        let w = mode(&uxb, idx);
        let f = project(g.wavevector(idx), [v[0] + w[0], v[1] + w[1], v[2] + w[2]]);
        for c in 0..3 {
            forcing.comps[c][idx] = f[c] / p.eta;
        }
    }

    let modes = masked_modes(g);
    let m = modes.len();
    let scale = 1.0 / g.len() as f64;
    let mut a = DMatrix::<Complex64>::zeros(3 * m, 3 * m);
    let mut rhs = DVector::<Complex64>::zeros(3 * m);
    for (row_mode, &k) in modes.iter().enumerate() {
        let wk = g.integer_wavevector(k);
        let xi = g.wavevector(k);
        for c in 0..3 {
            rhs[3 * row_mode + c] = forcing.comps[c][k];
            a[(3 * row_mode + c, 3 * row_mode + c)] += Complex64::new(be, 0.0);
        }
        for (col_mode, &pm) in modes.iter().enumerate() {
            let wp = g.integer_wavevector(pm);
            let Some(q) = in_cube(g, [wk[0] - wp[0], wk[1] - wp[1], wk[2] - wp[2]]) else { continue };
            let bq = mode(b, q);
            for bc in 0..3 {
                let col = project(xi, cross_basis(bc, bq));
                for c in 0..3 {
                    a[(3 * row_mode + c, 3 * col_mode + bc)] += col[c] * scale;
                }
            }
        }
    }
    let sol = a.lu().solve(&rhs).expect("Ohm system is nonsingular for ||B|| < beta eta");

    let mut j = forcing.scale(1.0 / be);
    for (i, &k) in modes.iter().enumerate() {
        for c in 0..3 {
            j.comps[c][k] = sol[3 * i + c];
        }
    }
    j
}

/// Random Ohm instance on an 8^3 grid: `u`, `B` inside the dealiasing cube,
/// `E` reaching beyond it, and `||B||_inf = b_ratio * beta eta`.
pub fn ohm_instance(rng: &mut ChaCha8Rng, b_ratio: f64) -> (SpectralField, SpectralField, SpectralField, PhysParams) {
    let g = Grid::new(8, 2.0 / 3.0).unwrap();
    let p = PhysParams::with_physics(rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0), 0.1).unwrap();
    let u = solenoidal(&g, 2, rng.gen_range(0.1..2.0), rng);
    let mut b = solenoidal(&g, 2, 1.0, rng);
    b.scale_in_place(b_ratio * p.beta * p.eta / b.linf_norm());
    let e = nsm_lab::fields::random::band_limited(&g, 3, rng.gen_range(0.1..2.0), rng);
    (u, b, e, p)
}

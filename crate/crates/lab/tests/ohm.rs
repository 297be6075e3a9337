mod common;

use nsm_lab::fields::random::solenoidal;
use nsm_lab::fields::{curl, dealiased_cross, grad, l2_distance, l2_norm, laplacian, leray_project, Grid, SpectralField};
use nsm_lab::hall_solver::{hall_rhs, HallState};
use nsm_lab::nsm_core::PhysParams;
use nsm_lab::ohm_closure::{
    electric_field_closure, electron_pressure, projected_residual, solve_ohm, OhmError, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid(n: usize) -> Grid {
    Grid::new(n, 2.0 / 3.0).unwrap()
}

#[test]
fn without_magnetic_field_the_current_is_the_projected_field() {
    let g = grid(8);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = PhysParams::with_physics(0.7, 1.3, 0.2).unwrap();
    let e = nsm_lab::fields::random::band_limited(&g, 3, 1.0, &mut rng);
    let zero = SpectralField::zeros(&g);
    let r = solve_ohm(&zero, &zero, &e, &p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert_eq!(r.iterations, 1);
    let want = leray_project(&e).scale(1.0 / p.beta_eta2());
    assert!(l2_distance(&r.j, &want) < 1e-14);
    assert_eq!(r.contraction_estimate, 0.0);
}

#[test]
fn zero_data_gives_zero_current() {
    let g = grid(8);
    let zero = SpectralField::zeros(&g);
    let p = PhysParams::with_physics(1.0, 1.0, 0.2).unwrap();
    let r = solve_ohm(&zero, &zero, &zero, &p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert_eq!(l2_norm(&r.j), 0.0);
    assert_eq!(r.residual, 0.0);
}

#[test]
fn convolution_oracle_agrees_with_pseudo_spectral_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (u, b, _, _) = common::ohm_instance(&mut rng, 0.5);
    let want = common::convolution_cross(&u, &b);
    let got = dealiased_cross(&u, &b).unwrap();
    assert!(l2_distance(&got, &want) < 1e-13 * l2_norm(&want));
}

#[test]
fn fixed_point_matches_dense_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let (u, b, e, p) = common::ohm_instance(&mut rng, 0.5);
        let r = solve_ohm(&u, &b, &e, &p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let dense = common::dense_ohm_solution(&u, &b, &e, &p);
        assert!(l2_distance(&r.j, &dense) <= 1e-9 * l2_norm(&dense));
        assert!(r.measured_ratio(1e-13) <= r.contraction_estimate + 1e-6);
        assert!((r.contraction_estimate - 0.5).abs() < 1e-12);
    }
}

#[test]
fn residual_is_small_and_solution_is_divergence_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (u, b, e, p) = common::ohm_instance(&mut rng, 0.8);
    let r = solve_ohm(&u, &b, &e, &p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert!(r.residual < 1e-10);
    let res = projected_residual(&r.j, &u, &b, &e, &p).unwrap();
    assert!((l2_norm(&res) - r.residual).abs() < 1e-14);
    assert!(r.j.divergence_ratio() < 1e-13);
}

#[test]
fn solution_is_affine_in_the_forcing() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (u, b, e1, p) = common::ohm_instance(&mut rng, 0.6);
    let (_, _, e2, _) = common::ohm_instance(&mut rng, 0.6);
    let zero = SpectralField::zeros(&u.grid);
    let solve = |u: &SpectralField, e: &SpectralField| solve_ohm(u, &b, e, &p, 1e-14, 400).unwrap().j;
    let sum = solve(&u, &e1.add(&e2));
    let parts = solve(&u, &e1).add(&solve(&zero, &e2));
    assert!(l2_distance(&sum, &parts) < 1e-11 * l2_norm(&sum));
}

#[test]
fn strong_field_reports_non_convergence() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (u, b, e, p) = common::ohm_instance(&mut rng, 0.9);
    match solve_ohm(&u, &b, &e, &p, 1e-30, 5) {
        Err(OhmError::NonConvergence { iterations, contraction_estimate, .. }) => {
            assert_eq!(iterations, 5);
            assert!((contraction_estimate - 0.9).abs() < 1e-12);
        }
        other => panic!("expected non-convergence, got {other:?}"),
    }
}

#[test]
fn electron_pressure_carries_the_longitudinal_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (u, b, e, p) = common::ohm_instance(&mut rng, 0.5);
    let j = solve_ohm(&u, &b, &e, &p, 1e-14, 400).unwrap().j;
    let g = dealiased_cross(&j, &b)
        .unwrap()
        .add(&j.scale(p.beta * p.eta))
        .sub(&e.add(&dealiased_cross(&u, &b).unwrap()).scale(1.0 / p.eta));
    let pe = electron_pressure(&j, &u, &b, &e, &p).unwrap();
    let mut g0 = g.clone();
    for c in 0..3 {
        g0.comps[c][0] = 0.0.into();
    }
    assert!(l2_distance(&grad(&pe), &g0) < 1e-11 * l2_norm(&g0));
}

#[test]
fn closure_of_zero_current_and_field_free_closure() {
    let g = grid(8);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = PhysParams::with_physics(1.5, 0.8, 0.2).unwrap();
    let j = solenoidal(&g, 2, 1.0, &mut rng);
    let zero = SpectralField::zeros(&g);
    let e = electric_field_closure(&zero, &zero, &j, &p).unwrap();
    assert!(l2_distance(&e, &j.scale(p.beta_eta2())) < 1e-14);
    assert_eq!(l2_norm(&electric_field_closure(&zero, &zero, &zero, &p).unwrap()), 0.0);
}

#[test]
fn closure_curl_reproduces_hall_induction() {
    // With j = curl B, -curl E = curl(u x B) - eta curl(j x B) + beta eta^2 Delta B.
    let g = grid(16);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let p = PhysParams::with_physics(0.9, 1.2, 0.1).unwrap();
    let u = solenoidal(&g, 3, 0.5, &mut rng);
    let b = solenoidal(&g, 3, 0.5, &mut rng);
    let e = electric_field_closure(&u, &b, &curl(&b), &p).unwrap();
    let (_, db) = hall_rhs(&HallState::new(u, b.clone(), p).unwrap()).unwrap();
    let want = db.add(&laplacian(&b).scale(p.beta_eta2()));
    let got = curl(&e).scale(-1.0);
    assert!(l2_distance(&got, &want) < 1e-10 * l2_norm(&want));
}

use std::f64::consts::PI;

use nsm_lab::fields::random::{band_limited, solenoidal};
use nsm_lab::fields::snapshot::Snapshot;
use nsm_lab::fields::{
    band_filter, band_norms, curl, dealiased_cross, dealiased_outer, div, div_tensor, grad, l2_distance, l2_norm, laplacian,
    leray_project, FieldError, Grid, ScalarField, SpectralField, DEALIAS_TWO_THIRDS,
};
use nsm_lab::nsm_core::{Band, BandThresholds, Complex64, PhysParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid(n: usize) -> Grid {
    Grid::new(n, DEALIAS_TWO_THIRDS).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn wavenumber_ordering() {
    let g = grid(8);
    let k: Vec<i64> = (0..8).map(|i| g.wavenumber(i)).collect();
    assert_eq!(k, vec![0, 1, 2, 3, 4, -3, -2, -1]);
    assert_eq!(g.integer_wavevector(g.index(1, 7, 4)), [1, -1, 4]);
    assert_eq!(g.index_of([1, -1, 4]), g.index(1, 7, 4));
}

#[test]
fn grid_rejects_bad_sizes() {
    assert!(matches!(Grid::new(7, 0.5), Err(FieldError::InvalidGrid(_))));
    assert!(matches!(Grid::new(2, 0.5), Err(FieldError::InvalidGrid(_))));
    assert!(matches!(Grid::new(8, 0.0), Err(FieldError::InvalidGrid(_))));
}

#[test]
fn dealias_cube_size() {
    // 2/3 of the half-width 16 is 10.67: wavenumbers -10..=10 survive.
    let g = grid(32);
    assert_eq!(g.dealias_mask().iter().filter(|k| **k).count(), 21 * 21 * 21);
    assert!((g.max_radius() - 3f64.sqrt() * 16.0).abs() < 1e-12);
}

#[test]
fn l2_norm_of_a_sine() {
    // int_{T^3} sin^2 y = pi (2 pi)^2.
    let g = grid(16);
    let f = SpectralField::from_fn(&g, |_, y, _| [y.sin(), 0.0, 0.0]);
    assert!((l2_norm(&f).powi(2) - 4.0 * PI.powi(3)).abs() < 1e-11);
}

#[test]
fn fft_round_trip() {
    let g = grid(12);
    let f = band_limited(&g, 5, 1.0, &mut rng(3));
    let phys = f.to_physical();
    let back = SpectralField::from_physical(&g, &phys);
    assert!(l2_distance(&f, &back) < 1e-13);
}

#[test]
fn real_fields_have_hermitian_spectra() {
    let g = grid(10);
    let f = band_limited(&g, 4, 1.0, &mut rng(9));
    let scale = f.comps.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
    assert!(f.hermitian_defect() < 1e-13 * scale);
}

#[test]
fn analytic_curl_div_grad_laplacian() {
    let g = grid(16);
    let b = SpectralField::from_fn(&g, |x, y, z| [z.sin(), x.sin(), y.sin()]);
    let expected = SpectralField::from_fn(&g, |x, y, z| [y.cos(), z.cos(), x.cos()]);
    assert!(l2_distance(&curl(&b), &expected) < 1e-12);

    let v = SpectralField::from_fn(&g, |x, y, z| [(2.0 * x).sin() * y.cos(), z.cos(), 0.0]);
    let d = div(&v).to_physical();
    let h = g.spacing();
    for (idx, val) in d.iter().enumerate() {
        let (ix, iy, _) = g.split_index(idx);
        let (x, y) = (ix as f64 * h, iy as f64 * h);
        assert!((val - 2.0 * (2.0 * x).cos() * y.cos()).abs() < 1e-12);
    }

    let phi: Vec<f64> = (0..g.len())
        .map(|idx| {
            let (ix, iy, iz) = g.split_index(idx);
            (ix as f64 * h).sin() * (2.0 * iz as f64 * h).cos() + (iy as f64 * h).cos()
        })
        .collect();
    let gp = grad(&ScalarField::from_physical(&g, &phi));
    let expected = SpectralField::from_fn(&g, |x, y, z| [x.cos() * (2.0 * z).cos(), -y.sin(), -2.0 * x.sin() * (2.0 * z).sin()]);
    assert!(l2_distance(&gp, &expected) < 1e-12);

    let lap = laplacian(&b);
    assert!(l2_distance(&lap, &b.scale(-1.0)) < 1e-12);
}

#[test]
fn vector_calculus_identities() {
    let g = grid(12);
    let f = band_limited(&g, 5, 1.0, &mut rng(5));
    assert!(div(&curl(&f)).max_abs() < 1e-12);
    let phi = ScalarField { grid: g.clone(), coeffs: f.comps[0].clone() };
    assert!(l2_norm(&curl(&grad(&phi))) < 1e-12);
    // curl curl = grad div - laplacian
    let lhs = curl(&curl(&f));
    let rhs = grad(&div(&f)).sub(&laplacian(&f));
    assert!(l2_distance(&lhs, &rhs) < 1e-10 * l2_norm(&rhs));
}

#[test]
fn leray_projector_properties() {
    let g = grid(12);
    let f = band_limited(&g, 5, 1.0, &mut rng(11));
    let pf = leray_project(&f);
    assert!(pf.divergence_ratio() < 1e-14);
    assert!(l2_distance(&leray_project(&pf), &pf) < 1e-14);
    // The removed part is a gradient, orthogonal to the projection.
    let removed = f.sub(&pf);
    assert!(l2_norm(&curl(&removed)) < 1e-12);
    let sum = l2_norm(&pf).powi(2) + l2_norm(&removed).powi(2);
    assert!((sum - l2_norm(&f).powi(2)).abs() < 1e-12);
    assert!(pf.div_free);
}

/// Exact product on a grid large enough to hold it, then truncated to the
/// coarse dealiasing cube.
fn fine_oracle_cross(a: &SpectralField, b: &SpectralField, fine: &Grid) -> SpectralField {
    let mut am = a.clone();
    am.dealias_in_place();
    let mut bm = b.clone();
    bm.dealias_in_place();
    let pa = am.resample(fine).to_physical();
    let pb = bm.resample(fine).to_physical();
    let len = fine.len();
    let mut out = [vec![0.0; len], vec![0.0; len], vec![0.0; len]];
    for i in 0..len {
        out[0][i] = pa[1][i] * pb[2][i] - pa[2][i] * pb[1][i];
        out[1][i] = pa[2][i] * pb[0][i] - pa[0][i] * pb[2][i];
        out[2][i] = pa[0][i] * pb[1][i] - pa[1][i] * pb[0][i];
    }
    let mut coarse = SpectralField::from_physical(fine, &out).resample(&a.grid);
    coarse.dealias_in_place();
    coarse
}

#[test]
fn dealiased_cross_matches_fine_grid_oracle() {
    // Coarse inputs fill more than the dealiasing cube, so the truncation of
    // inputs matters too.
    let coarse = grid(16);
    let fine = grid(32);
    let a = band_limited(&coarse, 7, 1.0, &mut rng(21));
    let b = band_limited(&coarse, 7, 1.0, &mut rng(22));
    let got = dealiased_cross(&a, &b).unwrap();
    let want = fine_oracle_cross(&a, &b, &fine);
    assert!(l2_distance(&got, &want) < 1e-12 * l2_norm(&want));
}

#[test]
fn dealiased_outer_and_div_tensor() {
    let g = grid(16);
    let u = SpectralField::from_fn(&g, |x, y, z| [y.sin(), z.sin(), x.sin()]);
    let t = dealiased_outer(&u, &u).unwrap();
    // div(u (x) u) = (u . grad) u for divergence-free u.
    let adv = SpectralField::from_fn(&g, |x, y, z| [z.sin() * y.cos(), x.sin() * z.cos(), y.sin() * x.cos()]);
    assert!(l2_distance(&div_tensor(&t), &adv) < 1e-12);
    // ||u (x) u||^2 = int |u|^4
    let h = g.spacing();
    let mut acc = 0.0;
    for idx in 0..g.len() {
        let (ix, iy, iz) = g.split_index(idx);
        let (x, y, z) = (ix as f64 * h, iy as f64 * h, iz as f64 * h);
        acc += (y.sin().powi(2) + z.sin().powi(2) + x.sin().powi(2)).powi(2);
    }
    let want = acc * h.powi(3);
    assert!((t.l2_norm().powi(2) - want).abs() < 1e-10 * want);
}

#[test]
fn grid_mismatch_is_reported() {
    let a = SpectralField::zeros(&grid(8));
    let b = SpectralField::zeros(&grid(16));
    assert!(matches!(dealiased_cross(&a, &b), Err(FieldError::GridMismatch(8, 16))));
}

#[test]
fn band_partition_and_filters() {
    let g = grid(16);
    let f = band_limited(&g, 7, 2.0, &mut rng(4));
    let th = BandThresholds([1.5, 3.0, 3.0, 6.0]);
    let norms = band_norms(&f, &th).unwrap();
    let total: f64 = norms.iter().map(|v| v * v).sum();
    assert!((total - 4.0).abs() < 1e-12);
    // Equal thresholds give an empty middle band.
    assert_eq!(norms[2], 0.0);
    let low = band_filter(&f, &th, Band::Ll).unwrap();
    for idx in 0..g.len() {
        if g.k2(idx).sqrt() > 1.5 {
            assert_eq!(low.mode(idx).norm(), 0.0);
        }
    }
    let sum = Band::ALL.iter().fold(SpectralField::zeros(&g), |acc, b| acc.add(&band_filter(&f, &th, *b).unwrap()));
    assert!(l2_distance(&sum, &f) < 1e-14);
}

#[test]
fn decreasing_thresholds_are_rejected() {
    let f = SpectralField::zeros(&grid(8));
    let bad = BandThresholds([2.0, 1.0, 3.0, 4.0]);
    assert!(matches!(band_norms(&f, &bad), Err(FieldError::NonMonotoneThresholds(_))));
    let nan = BandThresholds([1.0, f64::NAN, 3.0, 4.0]);
    assert!(band_filter(&f, &nan, Band::Mid).is_err());
}

fn sample_snapshot() -> Snapshot {
    let g = grid(8);
    let u = solenoidal(&g, 3, 0.3, &mut rng(1));
    let b = band_limited(&g, 3, 0.7, &mut rng(2));
    Snapshot {
        time: 0.125,
        params: PhysParams::with_physics(1.0, 2.0, 0.1).unwrap(),
        config_hash: "abcdef012345".into(),
        fields: vec![("u".into(), u), ("B".into(), b)],
    }
}

#[test]
fn snapshot_round_trip_is_bit_exact() {
    let snap = sample_snapshot();
    let mut buf = Vec::new();
    snap.write(&mut buf).unwrap();
    let back = Snapshot::read(buf.as_slice()).unwrap();
    assert_eq!(back.time, snap.time);
    assert_eq!(back.params, snap.params);
    assert_eq!(back.config_hash, snap.config_hash);
    assert_eq!(back.fields.len(), 2);
    for ((n0, f0), (n1, f1)) in snap.fields.iter().zip(&back.fields) {
        assert_eq!(n0, n1);
        assert_eq!(f0.div_free, f1.div_free);
        assert_eq!(f0.comps, f1.comps);
    }
}

#[test]
fn snapshot_rejects_corruption() {
    let snap = sample_snapshot();
    let mut buf = Vec::new();
    snap.write(&mut buf).unwrap();
    let mut bad_magic = buf.clone();
    bad_magic[0] = b'X';
    assert!(matches!(Snapshot::read(bad_magic.as_slice()), Err(FieldError::Format(_))));
    let mut bad_version = buf.clone();
    bad_version[8] = 99;
    assert!(matches!(Snapshot::read(bad_version.as_slice()), Err(FieldError::Format(_))));
    let truncated = &buf[..buf.len() - 5];
    assert!(matches!(Snapshot::read(truncated), Err(FieldError::Io(_))));
}

#[test]
fn resample_preserves_norm_of_band_limited_fields() {
    let g = grid(8);
    let f = band_limited(&g, 3, 1.0, &mut rng(8));
    let up = f.resample(&grid(16));
    assert!((l2_norm(&up) - 1.0).abs() < 1e-13);
    assert!(l2_distance(&up.resample(&g), &f) < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leray_is_idempotent_and_contractive(seed in any::<u64>(), kmax in 1i64..5) {
        let g = grid(10);
        let f = band_limited(&g, kmax, 1.0, &mut rng(seed));
        let pf = leray_project(&f);
        prop_assert!(l2_norm(&pf) <= l2_norm(&f) + 1e-14);
        prop_assert!(l2_distance(&leray_project(&pf), &pf) < 1e-14);
        prop_assert!(pf.divergence_ratio() < 1e-13);
    }

    #[test]
    fn cross_is_antisymmetric(seed in any::<u64>()) {
        let g = grid(8);
        let a = band_limited(&g, 3, 1.0, &mut rng(seed));
        let b = band_limited(&g, 3, 1.0, &mut rng(seed ^ 0x5555));
        let ab = dealiased_cross(&a, &b).unwrap();
        let ba = dealiased_cross(&b, &a).unwrap();
        prop_assert!(l2_norm(&ab.add(&ba)) < 1e-13);
        prop_assert!(ab.hermitian_defect() < 1e-10);
    }

    #[test]
    fn parseval_matches_physical_quadrature(seed in any::<u64>()) {
        let g = grid(8);
        let f = band_limited(&g, 3, 1.0, &mut rng(seed));
        let phys = f.to_physical();
        let h3 = g.spacing().powi(3);
        let quad: f64 = (0..g.len()).map(|i| phys[0][i].powi(2) + phys[1][i].powi(2) + phys[2][i].powi(2)).sum::<f64>() * h3;
        prop_assert!((l2_norm(&f).powi(2) - quad).abs() < 1e-12);
    }

    #[test]
    fn mean_mode_is_the_average(c in -3.0f64..3.0) {
        let g = grid(8);
        let f = SpectralField::from_fn(&g, |x, _, _| [c, x.sin(), 0.0]);
        let m = f.mean();
        prop_assert!((m[0] - Complex64::new(c, 0.0)).norm() < 1e-14);
        prop_assert!(m[1].norm() < 1e-14);
    }
}

mod common;

use common::{numeric_eigenvalues, worst_relative_match};
use nsm_core::{eigen_structure, Complex64, PhysParams, Regime, Wavevector};
use proptest::prelude::*;

fn params(beta: f64, eta: f64, gamma: f64) -> PhysParams {
    PhysParams { beta, eta, gamma, sobolev_s: 0.75, band_k: 1.1, band_r: 4.0, band_delta: 1.5 }
}

#[test]
fn spectrum_at_three_tenths() {
    let p = params(1.0, 1.0, 1.0);
    let mut eig = numeric_eigenvalues(&Wavevector::new(0.3, 0.0, 0.0), &p);
    eig.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    let expected = [-1.0, -0.9, -0.9, -0.1, -0.1, 0.0];
    for (v, e) in eig.iter().zip(expected) {
        assert!((v - Complex64::new(e, 0.0)).norm() < 1e-12, "{v} vs {e}");
    }
}

#[test]
fn closed_form_matches_numeric_at_example() {
    let p = params(1.0, 1.0, 1.0);
    let xi = Wavevector::new(0.0, 0.3, 0.0);
    let es = eigen_structure(&xi, &p).unwrap();
    assert!((es.lambda_plus - Complex64::new(-0.1, 0.0)).norm() < 1e-15);
    assert!((es.lambda_minus - Complex64::new(-0.9, 0.0)).norm() < 1e-15);
    let numeric = numeric_eigenvalues(&xi, &p);
    let expected = [
        Complex64::new(es.lambda0, 0.0),
        es.lambda_plus,
        es.lambda_plus,
        es.lambda_minus,
        es.lambda_minus,
    ];
    assert!(worst_relative_match(&expected, &numeric) < 1e-12);
}

fn sampled_case() -> impl Strategy<Value = (PhysParams, Wavevector)> {
    (
        0.5f64..2.0,
        0.5f64..2.0,
        0.05f64..1.0,
        -2.0f64..2.0,
        prop::array::uniform3(-1.0f64..1.0),
    )
        .prop_filter_map("nonzero direction", |(beta, eta, gamma, log_ratio, dir)| {
            let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
            if n < 1e-3 {
                return None;
            }
            let p = params(beta, eta, gamma);
            let k = p.shell_radius() * 10f64.powf(log_ratio);
            Some((p, Wavevector::new(k * dir[0] / n, k * dir[1] / n, k * dir[2] / n)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closed_form_eigenvalues_match_numeric((p, xi) in sampled_case()) {
        prop_assume!(p.discriminant(xi.norm_sqr()).abs() > 1e-6);
        let es = eigen_structure(&xi, &p).unwrap();
        let expected = [
            Complex64::new(es.lambda0, 0.0),
            es.lambda_plus,
            es.lambda_plus,
            es.lambda_minus,
            es.lambda_minus,
        ];
        let err = worst_relative_match(&expected, &numeric_eigenvalues(&xi, &p));
        prop_assert!(err < 1e-10, "relative error {err:e}");
    }

    #[test]
    fn vieta_identities((p, xi) in sampled_case()) {
        let es = eigen_structure(&xi, &p).unwrap();
        let sum = es.lambda_plus + es.lambda_minus;
        let prod = es.lambda_plus * es.lambda_minus;
        let rate = p.damping_rate();
        let k2g2 = xi.norm_sqr() / (p.gamma * p.gamma);
        if es.regime != Regime::ResonantShell {
            prop_assert!((sum + rate).norm() <= 1e-12 * rate);
            prop_assert!((prod - k2g2).norm() <= 1e-12 * k2g2);
        }
        match es.regime {
            Regime::SubResonant => {
                prop_assert_eq!(es.lambda_plus.im, 0.0);
                prop_assert!(es.lambda_plus.re < 0.0 && es.lambda_minus.re < 0.0);
            }
            Regime::SuperResonant => {
                prop_assert_eq!(es.lambda_plus.re, -0.5 * rate);
                prop_assert!((es.lambda_plus.norm() - k2g2.sqrt()).abs() <= 1e-12 * k2g2.sqrt());
            }
            Regime::ResonantShell => {}
        }
    }
}

#[test]
fn vieta_holds_on_the_shell_too() {
    // Snapped eigenvalues are exact there: sum = -rate, product = rate^2/4 = |xi|^2/gamma^2.
    let p = params(1.3, 0.7, 0.3);
    let k = p.shell_radius();
    let es = eigen_structure(&Wavevector::new(0.0, 0.0, k), &p).unwrap();
    assert_eq!(es.regime, Regime::ResonantShell);
    let rate = p.damping_rate();
    assert!((es.lambda_plus + es.lambda_minus + rate).norm() <= 1e-12 * rate);
    let k2g2 = k * k / (p.gamma * p.gamma);
    assert!((es.lambda_plus * es.lambda_minus - k2g2).norm() <= 1e-12 * k2g2);
}

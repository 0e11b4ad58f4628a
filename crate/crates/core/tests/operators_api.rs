//! Cross-module behavior through the public API.

use dunkl_cesaro::operators::{
    apply_t, default_radial_rule, l2_norm_exact, laguerre_mode, mixed_norm, operator_norm, vector_apply,
    CoefficientFamily, RadialSamples,
};
use dunkl_cesaro::specfun::{cesaro_coeffs, critical_index};
use dunkl_cesaro::verify::{quick_suite, run_suite, TolProfile, VerificationReport};
use dunkl_cesaro::{ComplexScalar, Error};
use proptest::prelude::*;

fn re(x: f64) -> ComplexScalar {
    ComplexScalar::new(x, 0.0)
}

#[test]
fn operator_scales_each_mode_by_its_cesaro_ratio() {
    let (d, gamma, n) = (3, 0.2, 14);
    let delta = critical_index(d, gamma) + 0.7;
    let rule = default_radial_rule(n, d, gamma).unwrap();
    let a = cesaro_coeffs(n, re(delta)).unwrap();
    for (m, k) in [(0, 0), (1, 3), (4, 5), (14, 0)] {
        let f = laguerre_mode(rule.clone(), m, k).unwrap();
        let tf = apply_t(n, m, delta, gamma, d, &f).unwrap();
        let c = a[n - m - 2 * k] / a[n];
        for (x, y) in tf.values().iter().zip(f.values()) {
            assert!((x - y * c).norm() <= 1e-9 * (1.0 + y.norm()), "m={m} k={k}");
        }
    }
    // Modes above the degree are annihilated.
    let high = laguerre_mode(rule.clone(), 3, 6).unwrap();
    let t = apply_t(n, 3, delta, gamma, d, &high).unwrap();
    assert!(t.values().iter().all(|v| v.norm() < 1e-9));
}

#[test]
fn mismatched_rule_is_a_contract_error() {
    let rule = default_radial_rule(8, 2, 0.3).unwrap();
    let f = laguerre_mode(rule, 1, 0).unwrap();
    assert!(matches!(apply_t(8, 1, 1.5, 0.4, 2, &f), Err(Error::Contract(_))));
}

#[test]
fn quick_suite_report_round_trips() {
    let report = run_suite(&quick_suite(TolProfile::Standard));
    assert!(report.pass);
    let back: VerificationReport = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(back, report);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn p2_norm_is_a_contraction(n in 0usize..40, m in 0usize..12, delta in 0.0f64..4.0) {
        let v = l2_norm_exact(n, m, delta).unwrap();
        prop_assert!(v <= 1.0 + 1e-10);
        prop_assert_eq!(operator_norm(n, m, delta, 0.3, 2, 2.0).unwrap().value, v);
    }

    #[test]
    fn vector_operator_contracts_mixed_l2_norm(
        n in 0usize..24,
        a in 0.1f64..2.0,
        b in -1.0f64..1.0,
        offset in 0.05f64..2.0,
    ) {
        let (d, gamma) = (2, 0.3);
        let rule = default_radial_rule(24, d, gamma).unwrap();
        let gauss = |m: i32| {
            RadialSamples::from_real_fn(rule.clone(), move |r| r.powi(m) * (1.0 + b * r) * (-a * r * r).exp()).unwrap()
        };
        let family = CoefficientFamily::new(rule.clone())
            .unwrap()
            .with(0, 1, gauss(0))
            .unwrap()
            .with(1, 2, gauss(1))
            .unwrap()
            .with(3, 1, gauss(3))
            .unwrap();
        let delta = critical_index(d, gamma) + offset;
        let out = vector_apply(n, delta, gamma, d, &family).unwrap();
        let before = mixed_norm(&family, 2.0, d, gamma).unwrap();
        let after = mixed_norm(&out, 2.0, d, gamma).unwrap();
        prop_assert!(after <= before * (1.0 + 1e-10), "{} > {}", after, before);
    }
}

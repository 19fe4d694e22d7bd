mod common;

use proptest::prelude::*;
use tsq::chebapprox::{derive_power_spec, fit_for_epsilon, raw_coefficients, sup_error, vp_average, Parity};

#[test]
fn closed_form_coefficients_match_quadrature() {
    for q in [1.5, 2.0, 2.5, 3.0, 3.7] {
        let spec = derive_power_spec(q).unwrap();
        let raw = raw_coefficients(&spec, 65).unwrap();
        let f = move |x: f64| spec.target(x);
        for (k, c) in raw.iter().enumerate() {
            let want = common::chebyshev_coefficient(&f, k, 1e-12);
            assert!((c - want).abs() < 1e-9, "q={q} k={k}: {c} vs {want}");
        }
    }
}

#[test]
fn parity_follows_the_integer_part() {
    assert_eq!(derive_power_spec(1.5).unwrap().parity(), Parity::Even);
    assert_eq!(derive_power_spec(2.0).unwrap().parity(), Parity::Even);
    assert_eq!(derive_power_spec(3.0).unwrap().parity(), Parity::Odd);
    assert_eq!(derive_power_spec(4.5).unwrap().parity(), Parity::Even);
}

#[test]
fn averaged_truncation_is_within_four_times_minimax() {
    for q in [1.5, 2.0, 2.5, 3.0] {
        let spec = derive_power_spec(q).unwrap();
        let f = move |x: f64| spec.target(x);
        for half in [2usize, 4, 8, 16] {
            let raw = raw_coefficients(&spec, 2 * half).unwrap();
            let vp = vp_average(&raw, half).unwrap();
            let err = sup_error(&vp, &spec, 100_001).unwrap();
            let best = common::remez_error(&f, half);
            assert!(best > 0.0);
            assert!(err <= 4.0 * best, "q={q} half={half}: vp {err} vs minimax {best}");
        }
    }
}

#[test]
fn abs_value_example() {
    // ½|x| at degree 2: the sup error is attained at x = 0.
    let spec = derive_power_spec(2.0).unwrap();
    let raw = raw_coefficients(&spec, 4).unwrap();
    let s = vp_average(&raw, 1).unwrap();
    assert!((sup_error(&s, &spec, 100_001).unwrap() - 1.0 / std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn certificates_hold_on_an_independent_grid() {
    for (q, eps) in [(1.5, 0.05), (2.0, 0.01), (3.0, 0.01)] {
        let (s, cert) = fit_for_epsilon(q, eps).unwrap();
        assert!(cert.accepted());
        assert!(cert.grid_size >= 100_000);
        let spec = derive_power_spec(q).unwrap();
        // Uniform points rather than Chebyshev nodes.
        let worst = (0..=200_000)
            .map(|i| -1.0 + i as f64 / 100_000.0)
            .map(|x| (s.eval_unchecked(x) - spec.target(x)).abs())
            .fold(0.0, f64::max);
        assert!(worst <= eps, "q={q}: {worst}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fitted_series_is_bounded_and_accurate(q in 1.5f64..4.0, eps in 0.01f64..0.2, x in -1.0f64..=1.0) {
        let (s, cert) = fit_for_epsilon(q, eps).unwrap();
        let spec = derive_power_spec(q).unwrap();
        prop_assert!(cert.sup_err_measured <= eps);
        prop_assert!(s.eval_unchecked(x).abs() <= 1.0);
        prop_assert!((s.eval_unchecked(x) - spec.target(x)).abs() <= eps);
    }
}

#[test]
fn degree_cap_is_reported() {
    // Near q = 1 the degree grows like eps^(-2/(q-1)).
    assert!(matches!(fit_for_epsilon(1.2, 0.005), Err(tsq::Error::Resource(_))));
}

#[test]
fn remez_oracle_knows_the_abs_value_minimax() {
    // E_2(|x|) = 1/8 and E_1(x²) = 1/2; a cubic is its own best cubic.
    assert!((common::remez_error(&|x: f64| x.abs(), 2) - 0.125).abs() < 1e-6);
    assert!((common::remez_error(&|x: f64| x * x, 1) - 0.5).abs() < 1e-6);
    assert!(common::remez_error(&|x: f64| x * x * x - x, 3) < 1e-12);
}

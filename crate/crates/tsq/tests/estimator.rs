use proptest::prelude::*;
use tsq::estimator::{
    post_process, repetitions, Backend, EstimatorConfig, Ledger, QueryEstimator, SampleConfig, SampleEstimator,
};
use tsq::qcore::random::{random_circuit, random_density_with, random_unitary};
use tsq::qcore::{prepare_state, DensityMatrix};
use tsq::rng;

fn random_state(seed: u64) -> DensityMatrix {
    let mut r = rng::seeded(seed);
    let n = 1 + (seed % 3) as usize;
    let rank = 1 + (seed as usize / 3) % (1 << n);
    random_density_with(n, rank, &mut r).unwrap()
}

#[test]
fn exact_backend_error_and_intrinsic_bound() {
    for q in [1.5, 2.0, 2.5] {
        let est = QueryEstimator::new(EstimatorConfig::new(q, 0.01)).unwrap();
        let eps_p = est.config().budget.eps_p;
        for s in 0..30 {
            let rho = random_state(s);
            let r = est.estimate_density(&rho, 0).unwrap();
            let truth = rho.trace_power(q);
            assert!((r.trace_power - truth).abs() <= 2.0 * eps_p, "q={q} seed={s}");
            // tr(½P(ρ)ρ) from the eigenvalues, against the Hadamard probability.
            let lam = rho.eigenvalues();
            let direct: f64 = lam.iter().map(|&l| 0.5 * est.series().eval_unchecked(l) * l).sum();
            assert!((direct - (2.0 * r.hadamard_p - 1.0)).abs() < 1e-10);
            assert!((direct - truth / 4.0).abs() <= eps_p / 2.0);
        }
    }
}

#[test]
fn circuit_and_density_inputs_agree() {
    let est = QueryEstimator::new(EstimatorConfig::new(2.0, 0.02)).unwrap();
    for s in 0..5 {
        let c = random_circuit(3, vec![0, 1], 4, &mut rng::seeded(s));
        let rho = prepare_state(&c).unwrap();
        let a = est.estimate_circuit(&c, 0).unwrap();
        let b = est.estimate_density(&rho, 0).unwrap();
        assert!((a.trace_power - b.trace_power).abs() < 1e-10);
        // The purified encoding costs the same queries per application.
        assert_eq!(a.ledger, b.ledger);
    }
}

#[test]
fn estimates_are_unitarily_invariant() {
    let est = QueryEstimator::new(EstimatorConfig::new(2.5, 0.02)).unwrap();
    for s in 0..10 {
        let rho = random_state(100 + s);
        let u = random_unitary(rho.dim(), &mut rng::seeded(s));
        let a = est.estimate_density(&rho, 0).unwrap().trace_power;
        let b = est.estimate_density(&rho.conjugate(&u).unwrap(), 0).unwrap().trace_power;
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn shot_backend_reports_the_grid_and_bound() {
    let cfg = EstimatorConfig::new(2.0, 0.1).with_backend(Backend::Shot).with_seed(4);
    let est = QueryEstimator::new(cfg).unwrap();
    let m = est.ae_grid() as f64;
    let pi = std::f64::consts::PI;
    assert!(2.0 * pi / m + pi * pi / (m * m) <= 0.01);
    assert!(2.0 * pi / (m / 2.0) + pi * pi / (m * m / 4.0) > 0.01);
    let r = est.estimate_density(&random_state(7), 3).unwrap();
    let Ledger::Queries(l) = r.ledger else { panic!("query ledger expected") };
    assert_eq!(l.shots, est.ae_grid() as u64);
    assert!((r.success_prob_floor - 8.0 / (pi * pi)).abs() < 1e-15);
}

#[test]
fn sample_path_formulas() {
    for (x, q) in [(0.25, 2.0), (0.5, 3.0), (0.0, 1.5)] {
        assert_eq!(post_process(x, q), (q + 2.0f64).exp2() * (1.0 - 2.0 * x));
    }
    assert_eq!(repetitions(0.1).unwrap(), 90);
    assert_eq!(repetitions(0.01).unwrap(), (6f64.ln() / 2e-4).ceil() as u64);
}

#[test]
fn sample_estimates_mostly_land_inside_eps() {
    let q = 2.0;
    let eps = 0.3;
    let rho = random_state(11);
    let truth = rho.trace_power(q);
    let mut cfg = SampleConfig::new(q, eps);
    cfg.seed = 5;
    let est = SampleEstimator::new(cfg).unwrap();
    let hits = (0..60).filter(|&s| (est.estimate(&rho, s).unwrap().trace_power - truth).abs() <= eps).count();
    assert!(hits >= 40, "{hits}/60");
}

#[test]
fn low_q_is_rejected() {
    let e = QueryEstimator::new(EstimatorConfig::new(0.5, 0.01)).unwrap_err();
    assert!(e.to_string().contains("q below supported floor"));
    assert!(SampleEstimator::new(SampleConfig::new(1.0, 0.01)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_error_within_twice_the_polynomial_budget(seed in any::<u64>(), q in 1.3f64..3.5) {
        let est = QueryEstimator::new(EstimatorConfig::new(q, 0.05)).unwrap();
        let rho = random_state(seed);
        let r = est.estimate_density(&rho, 0).unwrap();
        prop_assert!((r.trace_power - rho.trace_power(q)).abs() <= 2.0 * est.config().budget.eps_p);
        prop_assert!((r.tsallis - (1.0 - r.trace_power) / (q - 1.0)).abs() < 1e-12);
    }
}

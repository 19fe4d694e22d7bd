//! One line per acceptance criterion. Exits non-zero when a criterion fails
//! for any reason other than the documented false sub-claims listed in
//! `KNOWN_FALSE`.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use tsq::chebapprox::{derive_power_spec, fit_for_epsilon, grid_stats};
use tsq::cli::{bench_scaling, log_log_slope};
use tsq::estimator::{post_process, repetitions, Backend, EstimatorConfig, QueryEstimator, SampleConfig, SampleEstimator};
use tsq::ineqlab::{
    auxiliary_fact_suite, binary_bound_suite, data_processing_suite, default_q_grid, qjt_sandwich_suite,
    structural_suite, uniform_tv_full_suite, PairEnsemble, SuiteOptions, SuiteReport, KNOWN_FALSE_PARTS,
};
use tsq::qcore::random::random_density_with;
use tsq::qcore::DensityMatrix;
use tsq::qsvtkit::{ae_distribution, ae_in_bound_mass};
use tsq::reductions::{
    bisearch_suite, mixed_soundness_suite, pure_soundness_suite, qscmm_suite, solve_p0, threshold_spec, MixedEnsemble,
};
use tsq::rng;

const SEED: u64 = 7;

/// Sub-suites that fail because the asserted inequality is false.
const KNOWN_FALSE: [&str; 4] = [KNOWN_FALSE_PARTS[0], KNOWN_FALSE_PARTS[1], KNOWN_FALSE_PARTS[2], "mixed-reduction"];

struct Outcome {
    pass: bool,
    detail: String,
    failed_parts: Vec<String>,
}

impl Outcome {
    fn check(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, failed_parts: if pass { vec![] } else { vec!["check".into()] } }
    }
}

fn opts() -> SuiteOptions {
    SuiteOptions { seed: SEED, jobs: 0 }
}

fn suites(reports: &[SuiteReport]) -> Outcome {
    let pass = reports.iter().all(|r| r.pass);
    let failed_parts: Vec<String> = reports.iter().flat_map(|r| r.failed_parts.clone()).collect();
    let detail = reports
        .iter()
        .map(|r| format!("{} {}/{:.1e}", r.suite, r.cases, r.max_violation))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome { pass, detail, failed_parts }
}

fn random_state(n: usize, seed: u64) -> DensityMatrix {
    let mut r = rng::seeded(seed);
    random_density_with(n, 1 + (seed as usize) % (1 << n), &mut r).unwrap()
}

fn c1() -> Outcome {
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    let mut pass = true;
    for q in [1.5, 2.0, 2.5, 3.0] {
        for eps in [0.1, 0.01, 0.001] {
            let t = Instant::now();
            let (s, cert) = fit_for_epsilon(q, eps).unwrap();
            slowest = slowest.max(t.elapsed());
            // Re-check on exactly 10^5 nodes.
            let (err, max_abs, _) = grid_stats(&s, &derive_power_spec(q).unwrap(), 100_000).unwrap();
            pass &= cert.accepted() && cert.grid_size >= 100_000 && err <= eps && max_abs <= 1.0;
            worst = worst.max(err / eps);
        }
    }
    pass &= slowest < Duration::from_secs(10);
    Outcome::check(pass, format!("worst sup_err/eps {worst:.3}, slowest fit {:.2}s", slowest.as_secs_f64()))
}

fn c2() -> Outcome {
    let grids: [(f64, std::ops::RangeInclusive<i32>); 3] = [(1.5, 3..=9), (2.0, 3..=12), (3.0, 6..=20)];
    let mut pass = true;
    let mut parts = vec![];
    for (q, ks) in grids {
        let (mut xs, mut ys) = (vec![], vec![]);
        for k in ks {
            let eps = (-(k as f64)).exp2();
            let (s, _) = fit_for_epsilon(q, eps).unwrap();
            xs.push((1.0 / eps).ln());
            ys.push((s.degree as f64).ln());
        }
        let slope = log_log_slope(&xs, &ys);
        let want = 1.0 / (q - 1.0);
        pass &= (slope - want).abs() <= 0.15 * want;
        parts.push(format!("q={q} slope {slope:.3} (want {want:.3})"));
    }
    Outcome::check(pass, parts.join(", "))
}

fn c3() -> Outcome {
    let (mut worst_err, mut worst_intrinsic) = (0.0f64, 0.0f64);
    for q in [1.5, 2.0, 2.5] {
        let est = QueryEstimator::new(EstimatorConfig::new(q, 0.01)).unwrap();
        let eps_p = est.config().budget.eps_p;
        for i in 0..200u64 {
            let rho = random_state(1 + (i % 3) as usize, 1000 + i);
            let r = est.estimate_density(&rho, i).unwrap();
            let truth = rho.trace_power(q);
            worst_err = worst_err.max((r.trace_power - truth).abs() / (2.0 * eps_p));
            let half_p: f64 = rho.eigenvalues().iter().map(|&l| 0.5 * est.series().eval_unchecked(l) * l).sum();
            worst_intrinsic = worst_intrinsic.max((half_p - truth / 4.0).abs() / (0.5 * eps_p));
        }
    }
    Outcome::check(
        worst_err <= 1.0 && worst_intrinsic <= 1.0,
        format!("worst err/(2eps_p) {worst_err:.3}, worst intrinsic/(eps_p/2) {worst_intrinsic:.3}"),
    )
}

fn c4() -> Outcome {
    let (q, eps) = (2.0, 0.05);
    let rho = random_state(2, 4242);
    let truth = rho.trace_power(q);
    let est = QueryEstimator::new(EstimatorConfig::new(q, eps).with_backend(Backend::Shot).with_seed(SEED)).unwrap();
    let hits = (0..300u64).filter(|&i| (est.estimate_density(&rho, i).unwrap().trace_power - truth).abs() <= eps).count();
    let frac = hits as f64 / 300.0;
    Outcome::check(frac >= 0.60, format!("{hits}/300 within eps = {frac:.3}, M = {}", est.ae_grid()))
}

fn c5() -> Outcome {
    let mut pass = true;
    let mut parts = vec![];
    for q in [1.5, 2.0, 3.0] {
        let table = bench_scaling(q, &[0.2, 0.1, 0.05, 0.025], 2, SEED).unwrap();
        let want = 1.0 + 1.0 / (q - 1.0);
        pass &= (table.slope - want).abs() <= 0.15 * want;
        pass &= table.rows.iter().all(|r| r.abs_error <= 2.0 * r.eps / 10.0);
        parts.push(format!("q={q} exponent {:.3} (want {want:.3})", table.slope));
    }
    Outcome::check(pass, parts.join(", "))
}

fn c6() -> Outcome {
    let mut pass = true;
    for q in [1.5, 2.0, 3.0] {
        for j in 0..=20 {
            let x = j as f64 / 20.0;
            pass &= post_process(x, q) == 2f64.powf(q + 2.0) * (1.0 - 2.0 * x);
        }
    }
    pass &= post_process(0.25, 2.0) == 8.0;
    for (eps_h, k) in [(0.1, 90u64), (0.05, 359), (0.01, 8959)] {
        pass &= repetitions(eps_h).unwrap() == k;
        pass &= k == (6f64.ln() / (2.0 * eps_h * eps_h)).ceil() as u64;
    }
    let eps = [0.2, 0.1, 0.05, 0.025];
    let (xs, ys): (Vec<f64>, Vec<f64>) = eps
        .iter()
        .map(|&e| {
            let est = SampleEstimator::new(SampleConfig::new(2.0, e)).unwrap();
            pass &= est.ledger().repetitions == repetitions(e * (-7.0f64).exp2()).unwrap();
            ((1.0 / e).ln(), (est.ledger().samples as f64).ln())
        })
        .unzip();
    let slope = log_log_slope(&xs, &ys);
    pass &= (slope - 5.0).abs() <= 0.2 * 5.0;
    Outcome::check(pass, format!("formulas exact, sample slope {slope:.3} (want 5)"))
}

fn c7() -> Outcome {
    let o = opts();
    suites(&[
        qjt_sandwich_suite(10_000, &default_q_grid(), PairEnsemble::default(), &o).unwrap(),
        data_processing_suite(10_000, &o).unwrap(),
        binary_bound_suite(1000, &o).unwrap(),
        uniform_tv_full_suite(10_000, &o).unwrap(),
        auxiliary_fact_suite(10_000, &o).unwrap(),
    ])
}

fn c8() -> Outcome {
    suites(&[structural_suite(1000, &opts()).unwrap()])
}

fn c9() -> Outcome {
    let o = opts();
    let mut out = suites(&[
        pure_soundness_suite(1000, &o).unwrap(),
        mixed_soundness_suite(1000, MixedEnsemble::General, &o).unwrap(),
        mixed_soundness_suite(1000, MixedEnsemble::PureYes, &o).unwrap(),
        qscmm_suite(300, &o).unwrap(),
        bisearch_suite(50, &o).unwrap(),
    ]);
    let p0 = solve_p0(2.0, 1.0, 0.0).unwrap();
    let t5 = threshold_spec(5).unwrap().t;
    // 0.21132 is (3 − √3)/6 rounded to five places.
    let p0_ok = (p0 - (3.0 - 3f64.sqrt()) / 6.0).abs() <= 1e-6 && (p0 - 0.21132).abs() < 5e-6;
    let t5_ok = (t5 - 1.77534).abs() <= 1e-5;
    if !(p0_ok && t5_ok) {
        out.pass = false;
        out.failed_parts.push("closed-forms".into());
    }
    out.detail = format!("{}, p0 {p0:.7}, t(5) {t5:.6}", out.detail);
    out
}

fn c10() -> Outcome {
    let mut pass = true;
    let mut least = 1.0f64;
    let mut law_err = 0.0f64;
    for p in [0.1, 0.25, 0.5] {
        for m in [32, 64, 128] {
            let mass = ae_in_bound_mass(p, m).unwrap();
            least = least.min(mass);
            pass &= mass >= 8.0 / (PI * PI);
            let law = ae_distribution(p, m).unwrap();
            let oracle = common::ae_outcome_probs(p, m);
            law_err = law.probs().iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(law_err, f64::max);
        }
    }
    pass &= law_err < 1e-12;
    Outcome::check(pass, format!("least in-bound mass {least:.4} (floor {:.4}), law vs direct sum {law_err:.1e}", 8.0 / (PI * PI)))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome, u64); 10] = [
        (1, c1, 120),
        (2, c2, 60),
        (3, c3, 120),
        (4, c4, 300),
        (5, c5, 300),
        (6, c6, 120),
        (7, c7, 600),
        (8, c8, 120),
        (9, c9, 300),
        (10, c10, 10),
    ];
    let mut unexpected = 0;
    for (n, f, budget) in criteria {
        let t = Instant::now();
        let mut o = f();
        let secs = t.elapsed().as_secs_f64();
        if secs > budget as f64 {
            o.pass = false;
            o.failed_parts.push(format!("time budget {budget}s"));
        }
        let status = if o.pass { "PASS" } else { "FAIL" };
        let documented = !o.pass && o.failed_parts.iter().all(|p| KNOWN_FALSE.contains(&p.as_str()));
        let note = if documented { format!("; false sub-claims: {}", o.failed_parts.join(", ")) } else { String::new() };
        println!("criterion {n}: {status} [{secs:.1}s] {}{note}", o.detail);
        if !o.pass && !documented {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed outside the documented false sub-claims");
        std::process::exit(1);
    }
}

//! Small runs of every inequality suite, including the parts that fail and
//! the explicit counterexamples behind them.
//!
//! cargo run --example inequality_suites

use tsq::ineqlab::{
    auxiliary_fact_suite, binary_bound_suite, classical_jt_lower_check, data_processing_suite, default_q_grid,
    lower_bound_counterexample, partial_trace_channel, partial_trace_counterexample, data_processing_check,
    qjt_sandwich_suite, structural_suite, uniform_tv_full_suite, PairEnsemble, SuiteOptions,
};

fn run_example() -> tsq::Result<()> {
    let opts = SuiteOptions { seed: 7, jobs: 0 };
    let reports = [
        qjt_sandwich_suite(1000, &default_q_grid(), PairEnsemble::default(), &opts)?,
        data_processing_suite(1000, &opts)?,
        binary_bound_suite(200, &opts)?,
        uniform_tv_full_suite(1000, &opts)?,
        auxiliary_fact_suite(1000, &opts)?,
        structural_suite(200, &opts)?,
    ];
    for r in &reports {
        println!(
            "{:<16} cases {:>9}  max violation {:>10.3e}  pass {}  failing parts {:?}",
            r.suite, r.cases, r.max_violation, r.pass, r.failed_parts
        );
    }

    let (p0, p1) = lower_bound_counterexample();
    let (c0, c1) = partial_trace_counterexample();
    let tr = partial_trace_channel(2, &[0])?;
    for q in [1.5, 2.0] {
        let e = data_processing_check(&c0, &c1, &tr, q)?;
        println!(
            "q={q}: JT lower bound exceeds JT_q by {:.4}; partial trace raises QJT_q from {:.4} to {:.4}",
            classical_jt_lower_check(&p0, &p1, q)?,
            e.before,
            e.after
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}

//! Sample-path estimates with the analytic sample ledger.
//!
//! cargo run --example estimate_samples

use tsq::estimator::{SampleConfig, SampleEstimator};
use tsq::qcore::random_density;

fn run_example() -> tsq::Result<()> {
    let rho = random_density(1, 2, 3)?;
    let q = 2.0;
    println!("truth tr(rho^2) = {:.6}", rho.trace_power(q));
    for eps in [0.4, 0.2, 0.1] {
        let mut cfg = SampleConfig::new(q, eps);
        cfg.seed = 9;
        let est = SampleEstimator::new(cfg)?;
        let r = est.estimate(&rho, 0)?;
        let l = est.ledger();
        println!(
            "eps={eps}: estimate {:.6}, k = {} repetitions, {} copies per test, {} samples ({})",
            r.trace_power, l.repetitions, l.samples_per_test, l.samples, l.note
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

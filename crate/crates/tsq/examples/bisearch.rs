//! Binary search for an entropy value through a threshold oracle that may
//! answer either way inside its margin.
//!
//! cargo run --example bisearch

use tsq::reductions::{bisearch, call_bound, Checked, ExactDecider, GapPolicy};

fn run_example() -> tsq::Result<()> {
    let (tau, g) = (2.0, 0.01);
    for (value, seed) in [(0.0, 1), (0.731, 2), (1.5, 3), (2.0, 4)] {
        let mut oracle = Checked::new(ExactDecider::new(value, GapPolicy::random(seed)));
        let out = bisearch(&mut oracle, tau, g)?;
        println!(
            "value {value:<6} estimate {:.5}  error {:.5}  calls {} of at most {}",
            out.estimate,
            (out.estimate - value).abs(),
            out.calls,
            call_bound(tau, g)
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

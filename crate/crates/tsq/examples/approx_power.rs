//! Fits the averaged Chebyshev approximation of ½x^{q−1} for a few exponents
//! and tolerances and prints the certified degree and error.
//!
//! cargo run --example approx_power

use std::time::Instant;
use tsq::chebapprox::fit_for_epsilon;

fn run_example() -> tsq::Result<()> {
    println!("{:>5} {:>7} {:>8} {:>12} {:>10} {:>9}", "q", "eps", "degree", "sup_err", "grid", "ms");
    for q in [1.5, 2.0, 2.5, 3.0] {
        for eps in [0.1, 0.01, 0.001] {
            let t = Instant::now();
            let (series, cert) = fit_for_epsilon(q, eps)?;
            println!(
                "{q:>5} {eps:>7} {:>8} {:>12.4e} {:>10} {:>9}",
                series.degree,
                cert.sup_err_measured,
                cert.grid_size,
                t.elapsed().as_millis()
            );
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}

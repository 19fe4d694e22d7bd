//! Prepares-per-estimate scaling against 1/eps, with the fitted exponent.
//!
//! cargo run --example scaling_bench

use tsq::cli::bench_scaling;

fn run_example() -> tsq::Result<()> {
    let eps = [0.2, 0.1, 0.05, 0.025];
    for q in [1.5, 2.0, 3.0] {
        let t = bench_scaling(q, &eps, 2, 0)?;
        println!("q={q}: exponent {:.3}, expected {:.3}", t.slope, 1.0 + 1.0 / (q - 1.0));
        for r in &t.rows {
            println!(
                "  eps {:<6} degree {:>5} prep queries {:>10} abs error {:.2e} {:.1} ms",
                r.eps, r.degree, r.prep_queries, r.abs_error, r.wall_ms
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

//! The amplitude-estimation outcome law: mass inside the error bound and a
//! few seeded draws.
//!
//! cargo run --example amplitude_estimation

use std::f64::consts::PI;
use tsq::qsvtkit::{ae_error_bound, ae_in_bound_mass, ae_sample};

fn run_example() -> tsq::Result<()> {
    println!("floor 8/pi^2 = {:.4}", 8.0 / (PI * PI));
    for p in [0.1, 0.25, 0.5] {
        for m in [32, 64, 128] {
            let draws: Vec<String> =
                (0..4).map(|s| ae_sample(p, m, s).map(|d| format!("{:.4}", d.estimate))).collect::<tsq::Result<_>>()?;
            println!(
                "p={p} M={m:>3}: bound {:.4}, in-bound mass {:.4}, draws [{}]",
                ae_error_bound(p, m),
                ae_in_bound_mass(p, m)?,
                draws.join(", ")
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

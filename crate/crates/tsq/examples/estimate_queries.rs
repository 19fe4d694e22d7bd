//! Query-path estimates of tr(ρ^q) on a random mixed state and on a circuit
//! whose output is a Bell-pair marginal, with both backends.
//!
//! cargo run --example estimate_queries

use tsq::estimator::{Backend, EstimatorConfig, Ledger, QueryEstimator};
use tsq::qcore::{prepare_state, random_density, Gate, GateCircuit};

fn run_example() -> tsq::Result<()> {
    let rho = random_density(2, 3, 11)?;
    let mut bell = GateCircuit::new(2, vec![0]);
    bell.push(Gate::h(0)).push(Gate::cx(0, 1));

    for (q, eps) in [(1.5, 0.05), (2.0, 0.02), (3.0, 0.02)] {
        for backend in [Backend::Exact, Backend::Shot] {
            let est = QueryEstimator::new(EstimatorConfig::new(q, eps).with_backend(backend).with_seed(1))?;
            let r = est.estimate_density(&rho, 0)?;
            let c = est.estimate_circuit(&bell, 0)?;
            let Ledger::Queries(l) = r.ledger else { unreachable!() };
            println!(
                "q={q} eps={eps} {backend:?}: tr(rho^q) {:.6} (truth {:.6}), bell marginal {:.6} (truth {:.6}), \
                 degree {}, {} prep queries, {} shots",
                r.trace_power,
                rho.trace_power(q),
                c.trace_power,
                prepare_state(&bell)?.trace_power(q),
                r.degree,
                l.prep_queries,
                l.shots
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

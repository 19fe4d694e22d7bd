//! The three reductions on hand-built instances, with gaps and signed
//! entropy differences.
//!
//! cargo run --example reductions

use tsq::qcore::{DensityMatrix, Gate, GateCircuit, PureState};
use tsq::reductions::{
    mixed_state_reduce_states, orthogonal_yes_difference, pure_state_reduce, pure_state_reduce_circuits, qscmm_check,
    MixedParams, PureParams,
};

fn run_example() -> tsq::Result<()> {
    let (zero, one) = (PureState::basis(1, 0)?, PureState::basis(1, 1)?);
    let p = PureParams { q: 2.0, alpha: 1.0, beta: 0.0 };
    let out = pure_state_reduce(&zero, &one, &p)?;
    println!(
        "pure, orthogonal inputs: p0 {:.6}, gap {:.4}, difference {:.4}, case {:?}",
        out.solved_param, out.gap, out.difference, out.case
    );
    let out = pure_state_reduce(&zero, &zero, &p)?;
    println!("pure, identical inputs: difference {:.4}, case {:?}", out.difference, out.case);

    let mut c0 = GateCircuit::new(1, vec![0]);
    c0.push(Gate::ry(0, 0.3));
    let mut c1 = GateCircuit::new(1, vec![0]);
    c1.push(Gate::ry(0, 2.9));
    let out = pure_state_reduce_circuits(&c0, &c1, &PureParams { q: 1.5, alpha: 0.9, beta: 0.1 })?;
    let (e0, _) = out.circuits.as_ref().expect("circuit inputs give circuits");
    println!("pure, from circuits: T {:.4}, {} gates in the first emitted circuit", out.trace_distance, e0.gates.len());

    let mp = MixedParams { q: 2.0, gamma: 0.5, eps: 0.0 };
    let out = mixed_state_reduce_states(&zero.density(), &one.density(), &mp)?;
    println!("mixed, pure yes inputs: difference {:.4} against gap {:.4}", out.difference, out.gap);
    let a = DensityMatrix::diagonal(&[0.5, 0.5, 0.0, 0.0])?;
    let b = DensityMatrix::diagonal(&[0.0, 0.0, 0.5, 0.5])?;
    let out = mixed_state_reduce_states(&a, &b, &mp)?;
    println!(
        "mixed, mixed yes inputs: difference {:.4} (closed form {:.4}) against gap {:.4}",
        out.difference,
        orthogonal_yes_difference(2.0, 0.5, 0.5),
        out.gap
    );

    for n in 5..=7 {
        let yes = qscmm_check(&DensityMatrix::maximally_mixed(n))?;
        let no = qscmm_check(&DensityMatrix::basis(n, 0)?)?;
        println!(
            "threshold n={n}: t {:.5}, maximally mixed {:.4} ({:?}), basis state {:.4} ({:?})",
            yes.spec.t, yes.entropy, yes.case, no.entropy, no.case
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

use serde::{Deserialize, Serialize};

use super::construct::{flagged_circuit, flagged_state, product_circuit, product_state};
use super::solve::solve_p0;
use super::{PromiseCase, ReductionOutput, PROMISE_TOL};
use crate::error::{invalid, Result};
use crate::qcore::{binary_entropy, prepare_state, trace_distance, DensityMatrix, GateCircuit, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureParams {
    pub q: f64,
    /// Yes-instances have trace distance at least `alpha`.
    pub alpha: f64,
    /// No-instances have trace distance at most `beta`.
    pub beta: f64,
}

/// `2^{−q}·H_q(½)·(1 − β^q − √(1 − α²))`.
pub fn pure_gap(q: f64, alpha: f64, beta: f64) -> f64 {
    (-q).exp2() * binary_entropy(0.5, q) * (1.0 - beta.powf(q) - (1.0 - alpha * alpha).max(0.0).sqrt())
}

fn classify(t: f64, alpha: f64, beta: f64) -> PromiseCase {
    if t >= alpha - PROMISE_TOL {
        PromiseCase::Yes
    } else if t <= beta + PROMISE_TOL {
        PromiseCase::No
    } else {
        PromiseCase::Outside
    }
}

fn assemble(rho0: &DensityMatrix, rho1: &DensityMatrix, p: &PureParams) -> Result<ReductionOutput> {
    let p0 = solve_p0(p.q, p.alpha, p.beta)?;
    let a = product_state(rho0, rho1, p0)?;
    let b = flagged_state(rho0, rho1)?;
    let t = trace_distance(rho0, rho1)?;
    Ok(ReductionOutput {
        difference: a.tsallis(p.q)? - b.tsallis(p.q)?,
        rho0_prime: a,
        rho1_prime: b,
        circuits: None,
        solved_param: p0,
        gap: pure_gap(p.q, p.alpha, p.beta),
        q: p.q,
        trace_distance: t,
        case: classify(t, p.alpha, p.beta),
    })
}

/// `ρ′₀ = (p₀|0⟩⟨0| + p₁|1⟩⟨1|) ⊗ ½(ψ₀ + ψ₁)` and `ρ′₁ = ½|0⟩⟨0|⊗ψ₀ + ½|1⟩⟨1|⊗ψ₁`.
pub fn pure_state_reduce(psi0: &PureState, psi1: &PureState, p: &PureParams) -> Result<ReductionOutput> {
    if psi0.n() != psi1.n() {
        return invalid("states differ in qubit count");
    }
    assemble(&psi0.density(), &psi1.density(), p)
}

/// Circuit form: each input prepares a pure output state; the emitted circuits
/// use three extra qubits.
pub fn pure_state_reduce_circuits(c0: &GateCircuit, c1: &GateCircuit, p: &PureParams) -> Result<ReductionOutput> {
    let (rho0, rho1) = (prepare_state(c0)?, prepare_state(c1)?);
    for (b, r) in [&rho0, &rho1].into_iter().enumerate() {
        if r.rank(1e-9) != 1 {
            return invalid(format!("circuit {b} prepares a mixed output"));
        }
    }
    let mut out = assemble(&rho0, &rho1, p)?;
    out.circuits = Some((product_circuit(c0, c1, out.solved_param)?, flagged_circuit(c0, c1)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn orthogonal_and_identical_pairs() {
        let p = PureParams { q: 2.0, alpha: 1.0, beta: 0.0 };
        assert_abs_diff_eq!(pure_gap(2.0, 1.0, 0.0), 0.125, epsilon = 1e-15);
        let (a, b) = (PureState::basis(1, 0).unwrap(), PureState::basis(1, 1).unwrap());
        let out = pure_state_reduce(&a, &b, &p).unwrap();
        assert_eq!(out.case, PromiseCase::Yes);
        assert!(out.difference >= 0.125 - 1e-12);
        assert!(out.rho0_prime.rank(1e-10) <= 4 && out.rho1_prime.rank(1e-10) == 2);
        let out = pure_state_reduce(&a, &a, &p).unwrap();
        assert_eq!(out.case, PromiseCase::No);
        assert!(out.difference <= -0.125 + 1e-12);
        assert!(out.verify(1e-9).is_ok());
    }
}

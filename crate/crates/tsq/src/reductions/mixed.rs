use serde::{Deserialize, Serialize};

use super::construct::{flagged_circuit, flagged_state, product_circuit, product_state};
use super::solve::solve_theta;
use super::{PromiseCase, ReductionOutput, PROMISE_TOL};
use crate::error::{domain, Error, Result};
use crate::qcore::entropy::q_log_unchecked;
use crate::qcore::{binary_entropy, prepare_state, trace_distance, DensityMatrix, GateCircuit};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedParams {
    pub q: f64,
    /// Upper bound on both input entropies.
    pub gamma: f64,
    /// Yes-instances have `T ≥ 1 − eps`, no-instances `T ≤ eps`.
    pub eps: f64,
}

/// `½H_q(½) − γ(½ − 2^{−q}) − (½ + 2^{−q})(ε^q·2^{−q}·ln_q(2^n) + H_q(½)√(ε(2−ε)))`
/// for `n`-qubit inputs. May be non-positive; callers report that rather than
/// treat it as an error.
pub fn mixed_gap(q: f64, gamma: f64, eps: f64, n: usize) -> f64 {
    let h = binary_entropy(0.5, q);
    let w = (-q).exp2();
    let fannes = eps.powf(q) * w * q_log_unchecked((n as f64).exp2(), q) + h * (eps * (2.0 - eps)).sqrt();
    0.5 * h - gamma * (0.5 - w) - (0.5 + w) * fannes
}

/// Exact `S_q(ρ′₀) − S_q(ρ′₁)` for inputs on orthogonal supports with entropies
/// `s0` and `s1`: `2^{−q}H_q(½) − 2^{−q}(½ − 2^{−q})(s0 + s1)`. It drops below
/// [`mixed_gap`] at `ε = 0` once `s0 + s1 > 2^q(γ − H_q(½))`.
pub fn orthogonal_yes_difference(q: f64, s0: f64, s1: f64) -> f64 {
    let w = (-q).exp2();
    w * binary_entropy(0.5, q) - w * (0.5 - w) * (s0 + s1)
}

fn check(p: &MixedParams) -> Result<()> {
    if !(1.0..=2.0).contains(&p.q) {
        return domain(format!("q = {} outside [1, 2]", p.q));
    }
    if !(0.0..0.5).contains(&p.eps) {
        return domain(format!("eps = {} outside [0, 1/2)", p.eps));
    }
    if !(p.gamma >= 0.0) {
        return domain("gamma must be non-negative");
    }
    Ok(())
}

/// `ρ′₀ = (ϑ|0⟩⟨0| + (1−ϑ)|1⟩⟨1|) ⊗ (ρ₀+ρ₁)/2` and `ρ′₁ = ½|0⟩⟨0|⊗ρ₀ + ½|1⟩⟨1|⊗ρ₁`.
pub fn mixed_state_reduce_states(rho0: &DensityMatrix, rho1: &DensityMatrix, p: &MixedParams) -> Result<ReductionOutput> {
    check(p)?;
    let q = p.q;
    let (s0, s1) = (rho0.tsallis(q)?, rho1.tsallis(q)?);
    if s0.max(s1) > p.gamma + 1e-12 {
        return Err(Error::Promise(format!("input entropies {s0}, {s1} exceed gamma = {}", p.gamma)));
    }
    let theta = solve_theta(q)?;
    let a = product_state(rho0, rho1, theta)?;
    let b = flagged_state(rho0, rho1)?;
    let t = trace_distance(rho0, rho1)?;
    let case = if t >= 1.0 - p.eps - PROMISE_TOL {
        PromiseCase::Yes
    } else if t <= p.eps + PROMISE_TOL {
        PromiseCase::No
    } else {
        PromiseCase::Outside
    };
    Ok(ReductionOutput {
        difference: a.tsallis(q)? - b.tsallis(q)?,
        rho0_prime: a,
        rho1_prime: b,
        circuits: None,
        solved_param: theta,
        gap: mixed_gap(q, p.gamma, p.eps, rho0.n()),
        q,
        trace_distance: t,
        case,
    })
}

pub fn mixed_state_reduce(c0: &GateCircuit, c1: &GateCircuit, q: f64, gamma: f64, eps: f64) -> Result<ReductionOutput> {
    let mut out = mixed_state_reduce_states(&prepare_state(c0)?, &prepare_state(c1)?, &MixedParams { q, gamma, eps })?;
    out.circuits = Some((product_circuit(c0, c1, out.solved_param)?, flagged_circuit(c0, c1)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gap_substitution() {
        // The Fannes term vanishes at eps = 0, leaving ½·½ − ½·¼.
        assert_abs_diff_eq!(mixed_gap(2.0, 0.5, 0.0, 3), 0.125, epsilon = 1e-15);
        assert!(mixed_gap(2.0, 0.5, 0.3, 3) < 0.0);
    }

    #[test]
    fn pure_orthogonal_and_identical_inputs() {
        let p = MixedParams { q: 2.0, gamma: 0.5, eps: 0.0 };
        let (a, b) = (DensityMatrix::basis(1, 0).unwrap(), DensityMatrix::basis(1, 1).unwrap());
        let out = mixed_state_reduce_states(&a, &b, &p).unwrap();
        assert_eq!(out.case, PromiseCase::Yes);
        assert!(out.verify(1e-9).unwrap() >= 0.0);
        let m = DensityMatrix::maximally_mixed(1);
        let out = mixed_state_reduce_states(&m, &m, &p).unwrap();
        assert_eq!(out.case, PromiseCase::No);
        assert!(out.verify(1e-9).is_ok());
        assert!(matches!(
            mixed_state_reduce_states(&m, &m, &MixedParams { gamma: 0.4, ..p }),
            Err(Error::Promise(_))
        ));
    }

    #[test]
    fn mixed_orthogonal_inputs_fall_short_of_the_gap() {
        // Orthogonal rank-2 inputs with S_2 = ½ each: the difference is 1/16,
        // half the stated gap of 1/8.
        let a = DensityMatrix::diagonal(&[0.5, 0.5, 0.0, 0.0]).unwrap();
        let b = DensityMatrix::diagonal(&[0.0, 0.0, 0.5, 0.5]).unwrap();
        let out = mixed_state_reduce_states(&a, &b, &MixedParams { q: 2.0, gamma: 0.5, eps: 0.0 }).unwrap();
        assert_eq!(out.case, PromiseCase::Yes);
        assert_abs_diff_eq!(out.difference, 1.0 / 16.0, epsilon = 1e-12);
        assert_abs_diff_eq!(orthogonal_yes_difference(2.0, 0.5, 0.5), 1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.gap, 1.0 / 8.0, epsilon = 1e-15);
        assert!(matches!(out.verify(1e-9), Err(Error::Consistency(_))));
    }
}

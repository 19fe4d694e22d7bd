//! Executable entropy reductions: trace-distance promise problems mapped to
//! Tsallis entropy differences and thresholds, plus the binary search that
//! turns threshold decisions into an entropy estimate.

mod bisearch;
mod construct;
mod mixed;
mod pure;
mod qscmm;
mod solve;
mod soundness;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{DensityMatrix, GateCircuit, StateJson};

pub use bisearch::{bisearch, call_bound, BiSearchOutcome, Checked, Query, Decision, EntropyDecider, ExactDecider, GapPolicy};
pub use construct::{flagged_circuit, flagged_state, product_circuit, product_state};
pub use mixed::{mixed_gap, orthogonal_yes_difference, mixed_state_reduce, mixed_state_reduce_states, MixedParams};
pub use pure::{pure_gap, pure_state_reduce, pure_state_reduce_circuits, PureParams};
pub use qscmm::{qscmm_check, qscmm_reduce, qscmm_reduce_state, threshold_spec, QscmmCheck, ThresholdSpec, QSCMM_MARGIN};
pub use solve::{binary_entropy_slope, inverse_binary_entropy_newton, solve_p0, solve_p0_newton, solve_theta};
pub use soundness::{
    bisearch_suite, mixed_soundness_suite, pure_soundness_suite, qscmm_suite, MixedEnsemble, SOUNDNESS_TOL,
};

/// Slack allowed when placing a computed trace distance against a promise
/// threshold.
pub const PROMISE_TOL: f64 = 1e-12;

/// Which side of a trace-distance promise an instance falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PromiseCase {
    /// Far apart: the first constructed state must have the larger entropy.
    Yes,
    /// Close: the second constructed state must have the larger entropy.
    No,
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutput {
    pub rho0_prime: DensityMatrix,
    pub rho1_prime: DensityMatrix,
    /// Preparing circuits, when the inputs were circuits.
    pub circuits: Option<(GateCircuit, GateCircuit)>,
    /// `p₀` for the pure-state construction, `ϑ` for the mixed one.
    pub solved_param: f64,
    pub gap: f64,
    pub q: f64,
    pub trace_distance: f64,
    pub case: PromiseCase,
    /// `S_q(ρ′₀) − S_q(ρ′₁)`.
    pub difference: f64,
}

pub const DIRECTION: &str = "yes: S_q(rho0') - S_q(rho1') >= gap; no: S_q(rho1') - S_q(rho0') >= gap";

impl ReductionOutput {
    /// Signed slack of the implication: `difference − gap` on yes-instances,
    /// `−difference − gap` on no-instances.
    pub fn slack(&self) -> Option<f64> {
        match self.case {
            PromiseCase::Yes => Some(self.difference - self.gap),
            PromiseCase::No => Some(-self.difference - self.gap),
            PromiseCase::Outside => None,
        }
    }

    /// The slack, or an error when the instance breaks the promise or the
    /// implication fails by more than `tol`.
    pub fn verify(&self, tol: f64) -> Result<f64> {
        match self.slack() {
            None => Err(Error::Promise(format!(
                "trace distance {} is on neither side of the promise",
                self.trace_distance
            ))),
            Some(s) if s < -tol => Err(Error::Consistency(format!(
                "{:?}-instance misses the gap {} by {}",
                self.case, self.gap, -s
            ))),
            Some(s) => Ok(s),
        }
    }

    pub fn report(&self) -> ReductionReport {
        ReductionReport {
            solved_param: self.solved_param,
            gap: self.gap,
            q: self.q,
            trace_distance: self.trace_distance,
            case: self.case,
            difference: self.difference,
            slack: self.slack(),
            direction: DIRECTION.to_string(),
            rho0_prime: StateJson::from_density(&self.rho0_prime),
            rho1_prime: StateJson::from_density(&self.rho1_prime),
            circuits: self.circuits.clone(),
        }
    }
}

/// Serializable summary of a reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub solved_param: f64,
    pub gap: f64,
    pub q: f64,
    pub trace_distance: f64,
    pub case: PromiseCase,
    pub difference: f64,
    pub slack: Option<f64>,
    pub direction: String,
    pub rho0_prime: StateJson,
    pub rho1_prime: StateJson,
    pub circuits: Option<(GateCircuit, GateCircuit)>,
}

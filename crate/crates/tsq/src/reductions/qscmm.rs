use serde::{Deserialize, Serialize};

use super::{PromiseCase, PROMISE_TOL};
use crate::error::{domain, invalid, Result};
use crate::ineqlab::aux::threshold_t;
use crate::qcore::{prepare_state, trace_distance, DensityMatrix, GateCircuit};

pub const QSCMM_MARGIN: f64 = 1.0 / 150.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSpec {
    pub n: usize,
    /// `1 + 1/(n−1)`.
    pub q: f64,
    /// `¼(3n − n^{1+1/n} − 1)`.
    pub t: f64,
    pub margin: f64,
}

pub fn threshold_spec(n: usize) -> Result<ThresholdSpec> {
    if n < 5 {
        return domain(format!("the threshold reduction needs n >= 5, got {n}"));
    }
    let nf = n as f64;
    Ok(ThresholdSpec { n, q: 1.0 + 1.0 / (nf - 1.0), t: threshold_t(nf), margin: QSCMM_MARGIN })
}

pub fn qscmm_reduce_state(rho: &DensityMatrix) -> Result<(ThresholdSpec, f64)> {
    let spec = threshold_spec(rho.n())?;
    Ok((spec, rho.tsallis(spec.q)?))
}

pub fn qscmm_reduce(circuit: &GateCircuit, n: usize) -> Result<(ThresholdSpec, f64)> {
    if circuit.output_qubits.len() != n {
        return invalid(format!("circuit has {} output qubits, expected {n}", circuit.output_qubits.len()));
    }
    threshold_spec(n)?;
    qscmm_reduce_state(&prepare_state(circuit)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QscmmCheck {
    pub spec: ThresholdSpec,
    pub entropy: f64,
    pub trace_distance: f64,
    /// Yes: `T ≤ 1/n`, entropy above `t + margin`. No: `T ≥ 1 − 1/n`, entropy
    /// below `t − margin`.
    pub case: PromiseCase,
    /// Distance past the required side of the threshold, when in the promise.
    pub slack: Option<f64>,
}

pub fn qscmm_check(rho: &DensityMatrix) -> Result<QscmmCheck> {
    let (spec, entropy) = qscmm_reduce_state(rho)?;
    let t = trace_distance(rho, &DensityMatrix::maximally_mixed(spec.n))?;
    let inv = 1.0 / spec.n as f64;
    let (case, slack) = if t <= inv + PROMISE_TOL {
        (PromiseCase::Yes, Some(entropy - (spec.t + spec.margin)))
    } else if t >= 1.0 - inv - PROMISE_TOL {
        (PromiseCase::No, Some((spec.t - spec.margin) - entropy))
    } else {
        (PromiseCase::Outside, None)
    };
    Ok(QscmmCheck { spec, entropy, trace_distance: t, case, slack })
}

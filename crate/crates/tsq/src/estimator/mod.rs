//! End-to-end estimators of `tr(ρ^q)` and `S_q(ρ)`.
//!
//! The query path fits `P ≈ ½x^{q−1}`, transforms a block-encoding of `ρ` into
//! one of `½P(ρ)`, and reads `tr(½P(ρ)ρ) ≈ ¼tr(ρ^q)` off a Hadamard test,
//! either exactly or through amplitude estimation. The sample path runs the
//! same test on an encoding of `ρ/2` with plain repetitions and accounts
//! samples analytically.

mod query;
mod sample;

pub use query::{estimate_trace_power_query, estimate_trace_power_query_density, Backend, Budget, EstimatorConfig, QueryEstimator};
pub use sample::{
    estimate_trace_power_sample, post_process, repetitions, SampleBudget, SampleConfig, SampleEstimator, SampleLedger,
};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::qcore::entropy::SHANNON_BRANCH;
use crate::qsvtkit::QueryLedger;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ledger {
    Queries(QueryLedger),
    Samples(SampleLedger),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub trace_power: f64,
    pub tsallis: f64,
    pub err_bound: f64,
    pub ledger: Ledger,
    pub success_prob_floor: f64,
    /// Degree of the fitted polynomial.
    pub degree: usize,
    /// Exact outcome-0 probability of the Hadamard test behind the estimate.
    pub hadamard_p: f64,
}

pub fn tsallis_from_power(tp: f64, q: f64) -> Result<f64> {
    if (q - 1.0).abs() < SHANNON_BRANCH {
        return domain("the estimators exclude q = 1");
    }
    Ok((1.0 - tp) / (q - 1.0))
}

pub(crate) fn check_q(q: f64, floor: f64) -> Result<()> {
    if !q.is_finite() {
        return crate::error::invalid(format!("q must be finite, got {q}"));
    }
    if q < 1.0 + floor - 1e-12 {
        return domain(format!("q below supported floor (need q >= {})", 1.0 + floor));
    }
    Ok(())
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return crate::error::invalid(format!("eps must lie in (0, 1), got {eps}"));
    }
    Ok(())
}

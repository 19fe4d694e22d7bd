//! Query-count scaling of the exact-backend estimator.

use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::error::{invalid, Result};
use crate::estimator::{EstimatorConfig, Ledger, QueryEstimator};
use crate::qcore::random::random_density_with;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub eps: f64,
    pub degree: usize,
    /// State-preparation queries of one estimate.
    pub prep_queries: u64,
    /// Mean wall time per estimate, including the fit.
    pub wall_ms: f64,
    /// Worst `|estimate − tr(ρ^q)|` over the trials.
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchTable {
    pub q: f64,
    pub trials: usize,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `ln(prep_queries)` against `ln(1/eps)`.
    pub slope: f64,
}

pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Runs `trials` exact-backend estimates on random 2-qubit states at every
/// `eps` of a strictly descending list of at least four values.
pub fn bench_scaling(q: f64, eps_list: &[f64], trials: usize, seed: u64) -> Result<BenchTable> {
    if eps_list.len() < 4 {
        return invalid(format!("bench needs at least 4 eps values, got {}", eps_list.len()));
    }
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) {
        return invalid("eps list must be strictly descending");
    }
    if trials == 0 {
        return invalid("bench needs at least one trial");
    }
    let states = (0..trials)
        .map(|t| random_density_with(2, 4, &mut rng::stream(seed, t as u64)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let start = Instant::now();
        let est = QueryEstimator::new(EstimatorConfig::new(q, eps).with_seed(seed))?;
        let mut prep = 0;
        let mut abs_error: f64 = 0.0;
        for (t, rho) in states.iter().enumerate() {
            let r = est.estimate_density(rho, t as u64)?;
            if let Ledger::Queries(l) = r.ledger {
                prep = l.prep_queries;
            }
            abs_error = abs_error.max((r.trace_power - rho.trace_power(q)).abs());
        }
        let wall_ms = start.elapsed().as_secs_f64() * 1e3 / trials as f64;
        rows.push(BenchRow { eps, degree: est.series().degree, prep_queries: prep, wall_ms, abs_error });
    }
    let xs: Vec<f64> = rows.iter().map(|r| (1.0 / r.eps).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| (r.prep_queries as f64).ln()).collect();
    Ok(BenchTable { q, trials, slope: log_log_slope(&xs, &ys), rows })
}

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{check_eps, check_q, tsallis_from_power, EstimateResult, Ledger};
use crate::chebapprox::{fit_for_epsilon_with, ApproxCertificate, ChebSeries, FitOptions, DEFAULT_Q_FLOOR};
use crate::error::{invalid, Result};
use crate::qcore::{DensityMatrix, GateCircuit};
use crate::qsvtkit::{
    ae_sample_with, block_encode_density, block_encode_state, grid_for_error, hadamard_prob, hadamard_test_cost,
    poly_transform_with, BlockEncoding, PolyOptions, QueryLedger,
};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Uses the exact Hadamard-test probability.
    Exact,
    /// Draws the probability estimate from amplitude estimation.
    Shot,
}

/// Error split `(ε_p, ε_H, δ)`: polynomial, Hadamard/AE and synthesis error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub eps_p: f64,
    pub eps_h: f64,
    pub delta: f64,
}

impl Budget {
    pub fn query_default(eps: f64) -> Self {
        Budget { eps_p: eps / 10.0, eps_h: eps / 10.0, delta: eps / 10.0 }
    }

    /// `2ε_p + 4ε_H + 4δ`.
    pub fn total(&self) -> f64 {
        2.0 * self.eps_p + 4.0 * self.eps_h + 4.0 * self.delta
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    pub q: f64,
    pub eps: f64,
    pub backend: Backend,
    pub budget: Budget,
    /// Amplitude-estimation grid; derived from `ε_H` when absent.
    pub ae_grid: Option<usize>,
    pub seed: u64,
    /// Median of `2m + 1` independent runs when set.
    pub boost: Option<usize>,
    pub q_floor: f64,
    /// Norm of the synthesis perturbation injected into the transformed encoding.
    pub synthesis_delta: f64,
}

impl EstimatorConfig {
    pub fn new(q: f64, eps: f64) -> Self {
        EstimatorConfig {
            q,
            eps,
            backend: Backend::Exact,
            budget: Budget::query_default(eps),
            ae_grid: None,
            seed: 0,
            boost: None,
            q_floor: DEFAULT_Q_FLOOR,
            synthesis_delta: 0.0,
        }
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A fitted query-path pipeline, reusable across states and runs.
#[derive(Debug, Clone)]
pub struct QueryEstimator {
    cfg: EstimatorConfig,
    series: ChebSeries,
    cert: ApproxCertificate,
    grid: usize,
}

impl QueryEstimator {
    pub fn new(cfg: EstimatorConfig) -> Result<Self> {
        check_q(cfg.q, cfg.q_floor)?;
        check_eps(cfg.eps)?;
        let b = cfg.budget;
        if !(b.eps_p > 0.0 && b.eps_h > 0.0 && b.delta >= 0.0) {
            return invalid("budget entries must be positive");
        }
        if b.total() > cfg.eps * (1.0 + 1e-12) {
            return invalid(format!("budget 2eps_p + 4eps_H + 4delta = {} exceeds eps = {}", b.total(), cfg.eps));
        }
        if cfg.synthesis_delta > b.delta {
            return invalid("synthesis perturbation exceeds the delta budget");
        }
        let grid = match cfg.ae_grid {
            Some(m) if m < 2 || !m.is_power_of_two() => return invalid(format!("AE grid {m} is not a power of two")),
            Some(m) => m,
            None => grid_for_error(b.eps_h)?,
        };
        let opts = FitOptions { q_floor: cfg.q_floor, ..FitOptions::default() };
        let (series, cert) = fit_for_epsilon_with(cfg.q, b.eps_p, &opts)?;
        Ok(QueryEstimator { cfg, series, cert, grid })
    }

    pub fn series(&self) -> &ChebSeries {
        &self.series
    }

    pub fn certificate(&self) -> &ApproxCertificate {
        &self.cert
    }

    pub fn ae_grid(&self) -> usize {
        self.grid
    }

    pub fn config(&self) -> &EstimatorConfig {
        &self.cfg
    }

    pub fn estimate_circuit(&self, circuit: &GateCircuit, stream: u64) -> Result<EstimateResult> {
        let be = block_encode_density(circuit)?;
        let rho = DensityMatrix::from_trusted(be.op.clone());
        self.run(&be, &rho, stream)
    }

    pub fn estimate_density(&self, rho: &DensityMatrix, stream: u64) -> Result<EstimateResult> {
        self.run(&block_encode_state(rho, rho.n()), rho, stream)
    }

    fn run(&self, be: &BlockEncoding, rho: &DensityMatrix, stream: u64) -> Result<EstimateResult> {
        let cfg = &self.cfg;
        let popts = PolyOptions { delta: cfg.synthesis_delta, seed: cfg.seed ^ 0x5eed };
        let transformed = poly_transform_with(be, &self.series, &popts)?;
        let p = hadamard_prob(&transformed, rho)?;
        let test_cost = hadamard_test_cost(&transformed);
        let m = self.grid;
        let runs = cfg.boost.map(|k| 2 * k + 1).unwrap_or(1);

        let mut ledger = QueryLedger::default();
        let p_est = match cfg.backend {
            Backend::Exact => {
                for _ in 0..runs {
                    ledger.charge((m as u64).saturating_mul(test_cost), m as u64);
                }
                p
            }
            Backend::Shot => {
                let mut rng = rng::stream(cfg.seed, stream);
                let mut draws = Vec::with_capacity(runs);
                for _ in 0..runs {
                    let d = ae_sample_with(p, m, test_cost, &mut rng)?;
                    ledger = ledger.merged(d.ledger);
                    draws.push(d.estimate);
                }
                draws.sort_by(f64::total_cmp);
                draws[runs / 2]
            }
        };

        let trace_power = 4.0 * (2.0 * p_est - 1.0);
        let mf = m as f64;
        let ae_term = match cfg.backend {
            Backend::Exact => 0.0,
            Backend::Shot => 8.0 * (PI / mf + PI * PI / (mf * mf)),
        };
        let floor = match (cfg.backend, cfg.boost) {
            (Backend::Exact, _) => 1.0,
            (Backend::Shot, None) => 8.0 / (PI * PI),
            (Backend::Shot, Some(k)) => {
                let gap = 8.0 / (PI * PI) - 0.5;
                1.0 - (-2.0 * (2 * k + 1) as f64 * gap * gap).exp()
            }
        };
        Ok(EstimateResult {
            trace_power,
            tsallis: tsallis_from_power(trace_power, cfg.q)?,
            err_bound: 2.0 * cfg.budget.eps_p + ae_term + 4.0 * cfg.synthesis_delta,
            ledger: Ledger::Queries(ledger),
            success_prob_floor: floor,
            degree: self.series.degree,
            hadamard_p: p,
        })
    }
}

pub fn estimate_trace_power_query(circuit: &GateCircuit, cfg: &EstimatorConfig) -> Result<EstimateResult> {
    QueryEstimator::new(cfg.clone())?.estimate_circuit(circuit, 0)
}

/// Query path for a state given as a matrix; a purification oracle is assumed.
pub fn estimate_trace_power_query_density(rho: &DensityMatrix, cfg: &EstimatorConfig) -> Result<EstimateResult> {
    QueryEstimator::new(cfg.clone())?.estimate_density(rho, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::qcore::Gate;
    use approx::assert_abs_diff_eq;

    fn bell() -> GateCircuit {
        let mut c = GateCircuit::new(2, vec![0]);
        c.push(Gate::h(0)).push(Gate::cx(0, 1));
        c
    }

    #[test]
    fn bell_marginal_purity() {
        let r = estimate_trace_power_query(&bell(), &EstimatorConfig::new(2.0, 0.01)).unwrap();
        assert!((r.trace_power - 0.5).abs() <= 0.002);
        assert_abs_diff_eq!(r.tsallis, 1.0 - r.trace_power, epsilon = 1e-12);
        let Ledger::Queries(l) = r.ledger else { panic!("query ledger expected") };
        assert_eq!(l.prep_queries, l.shots * (2 * r.degree as u64 + 1));
    }

    #[test]
    fn diagonal_state() {
        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        let r = estimate_trace_power_query_density(&rho, &EstimatorConfig::new(1.5, 0.01)).unwrap();
        let truth = 0.7f64.powf(1.5) + 0.3f64.powf(1.5);
        assert!((r.trace_power - truth).abs() <= 0.002);
        assert_abs_diff_eq!(truth, 0.75, epsilon = 1e-3);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(QueryEstimator::new(EstimatorConfig::new(0.5, 0.1)), Err(Error::Domain(_))));
        assert!(matches!(QueryEstimator::new(EstimatorConfig::new(2.0, 1.5)), Err(Error::InvalidInput(_))));
        let mut cfg = EstimatorConfig::new(2.0, 0.1);
        cfg.budget.eps_h = 0.05;
        assert!(matches!(QueryEstimator::new(cfg), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn shot_backend_is_deterministic_per_stream() {
        let cfg = EstimatorConfig::new(2.0, 0.1).with_backend(Backend::Shot).with_seed(3);
        let est = QueryEstimator::new(cfg).unwrap();
        let a = est.estimate_circuit(&bell(), 4).unwrap();
        let b = est.estimate_circuit(&bell(), 4).unwrap();
        assert_eq!(a, b);
        assert!(a.err_bound <= 0.1);
    }
}

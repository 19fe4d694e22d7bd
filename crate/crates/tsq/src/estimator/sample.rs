use rand_distr::{Binomial, Distribution as _};
use serde::{Deserialize, Serialize};

use super::{check_eps, check_q, tsallis_from_power, EstimateResult, Ledger};
use crate::chebapprox::{fit_for_epsilon_with, ChebSeries, FitOptions, DEFAULT_Q_FLOOR};
use crate::error::{invalid, Error, Result};
use crate::qcore::DensityMatrix;
use crate::qsvtkit::{block_encode_samplized, hadamard_prob, poly_transform};
use crate::rng;

/// Error split for the sample path: polynomial `ε_p`, Hadamard `ε_H`,
/// samplizer `δ` and polynomial-synthesis `δ_p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleBudget {
    pub eps_p: f64,
    pub eps_h: f64,
    pub delta: f64,
    pub delta_p: f64,
}

impl SampleBudget {
    /// Every entry set to `2^{−q−5}·ε`.
    pub fn default_for(q: f64, eps: f64) -> Self {
        let v = eps * (-q - 5.0).exp2();
        SampleBudget { eps_p: v, eps_h: v, delta: v, delta_p: v }
    }

    /// `2^{q+1}(4δ + 4ε_H + 2δ_p + ε_p)`.
    pub fn total(&self, q: f64) -> f64 {
        (q + 1.0).exp2() * (4.0 * self.delta + 4.0 * self.eps_h + 2.0 * self.delta_p + self.eps_p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    pub q: f64,
    pub eps: f64,
    pub budget: SampleBudget,
    pub seed: u64,
    pub q_floor: f64,
}

impl SampleConfig {
    pub fn new(q: f64, eps: f64) -> Self {
        SampleConfig { q, eps, budget: SampleBudget::default_for(q, eps), seed: 0, q_floor: DEFAULT_Q_FLOOR }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleLedger {
    /// Hadamard-test repetitions `k`.
    pub repetitions: u64,
    /// Copies of `ρ` consumed by one samplized test, `⌈Q²/δ⌉` for degree `Q`.
    pub samples_per_test: u64,
    pub samples: u64,
    pub note: String,
}

const POLYLOG_NOTE: &str = "leading order only; the samplizer's polylogarithmic factor is not counted";

/// `⌈ln 6 / (2ε_H²)⌉`, enough for a 2/3 Hoeffding guarantee at `ε_H`.
pub fn repetitions(eps_h: f64) -> Result<u64> {
    if !(eps_h > 0.0) {
        return invalid("eps_H must be positive");
    }
    let k = (6f64.ln() / (2.0 * eps_h * eps_h)).ceil();
    if k > u64::MAX as f64 / 2.0 {
        return Err(Error::Resource(format!("{k:e} repetitions")));
    }
    Ok(k as u64)
}

/// Maps the fraction `x` of outcome-1 results to `2^{q+2}(1 − 2x)`.
pub fn post_process(x: f64, q: f64) -> f64 {
    (q + 2.0).exp2() * (1.0 - 2.0 * x)
}

#[derive(Debug, Clone)]
pub struct SampleEstimator {
    cfg: SampleConfig,
    series: ChebSeries,
    k: u64,
}

impl SampleEstimator {
    pub fn new(cfg: SampleConfig) -> Result<Self> {
        check_q(cfg.q, cfg.q_floor)?;
        check_eps(cfg.eps)?;
        let b = cfg.budget;
        if !(b.eps_p > 0.0 && b.eps_h > 0.0 && b.delta > 0.0 && b.delta_p >= 0.0) {
            return invalid("budget entries must be positive");
        }
        if b.total(cfg.q) > cfg.eps * (1.0 + 1e-12) {
            return invalid(format!("sample budget {} exceeds eps = {}", b.total(cfg.q), cfg.eps));
        }
        let opts = FitOptions { q_floor: cfg.q_floor, ..FitOptions::default() };
        let (series, _) = fit_for_epsilon_with(cfg.q, b.eps_p, &opts)?;
        let k = repetitions(b.eps_h)?;
        Ok(SampleEstimator { cfg, series, k })
    }

    pub fn series(&self) -> &ChebSeries {
        &self.series
    }

    pub fn repetitions(&self) -> u64 {
        self.k
    }

    /// Exact outcome-0 probability `½ + ½tr(¼P(ρ/2)ρ)`.
    pub fn outcome_prob(&self, rho: &DensityMatrix) -> Result<f64> {
        let be = block_encode_samplized(rho, 0);
        let transformed = poly_transform(&be, &self.series.scaled(0.5))?;
        hadamard_prob(&transformed, rho)
    }

    pub fn ledger(&self) -> SampleLedger {
        let d = self.series.degree as f64;
        let per = (d * d / self.cfg.budget.delta).ceil().min(u64::MAX as f64) as u64;
        SampleLedger {
            repetitions: self.k,
            samples_per_test: per,
            samples: self.k.saturating_mul(per),
            note: POLYLOG_NOTE.to_string(),
        }
    }

    pub fn estimate(&self, rho: &DensityMatrix, stream: u64) -> Result<EstimateResult> {
        let p = self.outcome_prob(rho)?;
        let draw = Binomial::new(self.k, 1.0 - p).map_err(|e| Error::Numerical(format!("binomial law: {e}")))?;
        let ones = draw.sample(&mut rng::stream(self.cfg.seed, stream));
        let x = ones as f64 / self.k as f64;
        let q = self.cfg.q;
        let trace_power = post_process(x, q);
        Ok(EstimateResult {
            trace_power,
            tsallis: tsallis_from_power(trace_power, q)?,
            err_bound: self.cfg.budget.total(q),
            ledger: Ledger::Samples(self.ledger()),
            success_prob_floor: 2.0 / 3.0,
            degree: self.series.degree,
            hadamard_p: p,
        })
    }
}

pub fn estimate_trace_power_sample(rho: &DensityMatrix, q: f64, eps: f64, seed: u64) -> Result<EstimateResult> {
    let mut cfg = SampleConfig::new(q, eps);
    cfg.seed = seed;
    SampleEstimator::new(cfg)?.estimate(rho, 0)
}

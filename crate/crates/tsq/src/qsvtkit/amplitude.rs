//! Canonical amplitude estimation through its closed-form outcome law.
//!
//! With `p = sin²(πθ)` and grid size `M`, outcome `y` has probability
//! `½[F(y/M − θ) + F(y/M + θ)]`, `F(δ) = sin²(Mπδ) / (M² sin²(πδ))`, and
//! reports the estimate `sin²(πy/M)`.

use rand::distr::{weighted::WeightedIndex, Distribution as _};
use std::f64::consts::PI;

use super::block::QueryLedger;
use crate::error::{invalid, Error, Result};
use crate::qcore::Distribution;
use crate::rng::{self, Rng};

fn check(p: f64, m: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("amplitude {p} outside [0, 1]"));
    }
    if m < 2 || !m.is_power_of_two() {
        return invalid(format!("grid size M = {m} must be a power of two ≥ 2"));
    }
    Ok(())
}

fn fejer(delta: f64, m: usize) -> f64 {
    let s = (PI * delta).sin();
    if s.abs() < 1e-12 {
        return 1.0;
    }
    let mf = m as f64;
    let num = (mf * PI * delta).sin();
    (num * num) / (mf * mf * s * s)
}

pub fn ae_estimate(y: usize, m: usize) -> f64 {
    let s = (PI * y as f64 / m as f64).sin();
    s * s
}

/// `2π√(p(1−p))/M + π²/M²`.
pub fn ae_error_bound(p: f64, m: usize) -> f64 {
    let mf = m as f64;
    2.0 * PI * (p * (1.0 - p)).max(0.0).sqrt() / mf + PI * PI / (mf * mf)
}

pub fn ae_distribution(p: f64, m: usize) -> Result<Distribution> {
    check(p, m)?;
    let theta = p.sqrt().asin() / PI;
    let mf = m as f64;
    let probs: Vec<f64> =
        (0..m).map(|y| 0.5 * (fejer(y as f64 / mf - theta, m) + fejer(y as f64 / mf + theta, m))).collect();
    Ok(Distribution::from_vec_unchecked(probs))
}

/// Probability that the reported estimate lies within [`ae_error_bound`].
pub fn ae_in_bound_mass(p: f64, m: usize) -> Result<f64> {
    let dist = ae_distribution(p, m)?;
    let bound = ae_error_bound(p, m);
    Ok(dist.probs().iter().enumerate().filter(|(y, _)| (ae_estimate(*y, m) - p).abs() <= bound).map(|(_, w)| w).sum())
}

/// Smallest power-of-two `M` with `2π/M + π²/M² ≤ eps`, the bound with
/// `√(p(1−p))` replaced by 1.
pub fn grid_for_error(eps: f64) -> Result<usize> {
    if !(eps > 0.0) {
        return invalid("target error must be positive");
    }
    let mut m = 2usize;
    while 2.0 * PI / m as f64 + PI * PI / (m as f64 * m as f64) > eps {
        m = m.checked_mul(2).ok_or_else(|| Error::Resource("amplitude estimation grid overflow".into()))?;
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AeDraw {
    pub estimate: f64,
    pub outcome: usize,
    pub ledger: QueryLedger,
}

pub fn ae_sample(p: f64, m: usize, seed: u64) -> Result<AeDraw> {
    ae_sample_with(p, m, 1, &mut rng::seeded(seed))
}

/// One draw; charges `M·cost_per_use` preparation queries and `M` shots.
pub fn ae_sample_with(p: f64, m: usize, cost_per_use: u64, rng: &mut Rng) -> Result<AeDraw> {
    let dist = ae_distribution(p, m)?;
    let sampler = WeightedIndex::new(dist.probs()).map_err(|e| Error::Numerical(format!("AE law: {e}")))?;
    let y = sampler.sample(rng);
    let mut ledger = QueryLedger::default();
    ledger.charge((m as u64).saturating_mul(cost_per_use), m as u64);
    Ok(AeDraw { estimate: ae_estimate(y, m), outcome: y, ledger })
}

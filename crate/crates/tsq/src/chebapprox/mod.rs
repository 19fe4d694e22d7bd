//! Averaged Chebyshev truncations of `f(x) = ½·x^{r−1}·|x|^{1+α}` on `[−1, 1]`.
//!
//! Coefficients come from closed-form Γ base cases and a two-term recurrence,
//! so a degree-`d` series costs `O(d)`. The degree for a target error is found
//! adaptively and every returned series carries a grid certificate.

mod grid;

pub use grid::{chebyshev_lobatto_nodes, grid_values};

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, invalid, Error, Result};

/// Default distance of the smallest supported `q` from 1.
pub const DEFAULT_Q_FLOOR: f64 = 1e-3;
/// Default upper limit on the polynomial degree searched by [`fit_for_epsilon`].
pub const DEFAULT_DEGREE_CAP: usize = 1 << 20;
/// Minimum number of certification nodes.
pub const MIN_CERT_GRID: usize = 100_000;
/// Certification nodes per unit of degree.
pub const CERT_NODES_PER_DEGREE: usize = 50;
/// Internal fraction of `eps` the degree search aims for.
pub const SAFETY: f64 = 0.9;

const SCREEN_NODES_PER_DEGREE: usize = 8;
// Bisection stops once the bracket is below 1/BISECT_REL of its lower end.
const BISECT_REL: usize = 128;
const MIN_SCREEN_GRID: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSpec {
    pub q: f64,
    pub r: u32,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl PowerSpec {
    /// `q − 1 = r + α`, the exponent of the target power.
    pub fn exponent(&self) -> f64 {
        self.r as f64 + self.alpha
    }

    pub fn parity(&self) -> Parity {
        if self.r % 2 == 1 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `½·x^{r−1}·|x|^{1+α}`.
    pub fn target(&self, x: f64) -> f64 {
        let ax = x.abs();
        let mag = 0.5 * ax.powi(self.r as i32 - 1) * ax.powf(1.0 + self.alpha);
        if self.parity() == Parity::Odd && x < 0.0 {
            -mag
        } else {
            mag
        }
    }
}

pub fn derive_power_spec(q: f64) -> Result<PowerSpec> {
    derive_power_spec_with_floor(q, DEFAULT_Q_FLOOR)
}

pub fn derive_power_spec_with_floor(q: f64, floor: f64) -> Result<PowerSpec> {
    if !q.is_finite() {
        return invalid(format!("q must be finite, got {q}"));
    }
    if q < 1.0 + floor - 1e-12 {
        return domain("q too close to 1");
    }
    let s = q - 1.0;
    let r = (s.floor() as u32).max(1);
    let alpha = s - r as f64;
    Ok(PowerSpec { q, r, alpha })
}

/// Chebyshev coefficients `c_0 … c_{count−1}` of the target, in the
/// convention `f = c_0/2 + Σ_{k≥1} c_k T_k`.
pub fn raw_coefficients(spec: &PowerSpec, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return invalid("count must be at least 1");
    }
    let s = spec.exponent();
    let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
    let mut c = vec![0.0; count];
    match spec.parity() {
        Parity::Even => {
            c[0] = inv_sqrt_pi * (ln_gamma((s + 1.0) / 2.0) - ln_gamma((s + 2.0) / 2.0)).exp();
            let mut k = 2;
            while k < count {
                let l = (k / 2) as f64;
                c[k] = c[k - 2] * (s - 2.0 * l + 2.0) / (s + 2.0 * l);
                k += 2;
            }
        }
        Parity::Odd => {
            if count > 1 {
                c[1] = inv_sqrt_pi
                    * (ln_gamma((s + 2.0) / 2.0) - ln_gamma((s + 3.0) / 2.0)).exp();
            }
            let mut k = 3;
            while k < count {
                let l = (k / 2) as f64;
                c[k] = c[k - 2] * (s - 2.0 * l + 1.0) / (s + 2.0 * l + 1.0);
                k += 2;
            }
        }
        Parity::None => unreachable!("power specs always have a parity"),
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
    pub degree: usize,
    pub parity: Parity,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a series needs at least one coefficient");
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return invalid("series coefficients must be finite");
        }
        let parity = detect_parity(&coeffs);
        Ok(ChebSeries { degree: coeffs.len() - 1, coeffs, parity })
    }

    /// The same series multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> ChebSeries {
        ChebSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            degree: self.degree,
            parity: self.parity,
        }
    }

    /// Clenshaw evaluation without the domain check; callers guarantee
    /// `|x| ≤ 1` or accept extrapolation.
    pub fn eval_unchecked(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &ck in c.iter().skip(1).rev() {
            let b0 = ck + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        c[0] / 2.0 + x * b1 - b2
    }
}

fn detect_parity(coeffs: &[f64]) -> Parity {
    let odd_zero = coeffs.iter().skip(1).step_by(2).all(|&c| c == 0.0);
    let even_zero = coeffs.iter().step_by(2).all(|&c| c == 0.0);
    match (odd_zero, even_zero) {
        (true, _) => Parity::Even,
        (false, true) => Parity::Odd,
        _ => Parity::None,
    }
}

/// de La Vallée Poussin average of the partial sums with `half_degree = d̃`:
/// `ĉ_k = c_k` for `k ≤ d̃` and `ĉ_k = ((2d̃ − k)/d̃)·c_k` above, degree `2d̃ − 1`.
pub fn vp_average(raw: &[f64], half_degree: usize) -> Result<ChebSeries> {
    if half_degree == 0 {
        return invalid("half_degree must be at least 1");
    }
    let len = 2 * half_degree;
    if raw.len() < len {
        return invalid(format!(
            "need {len} raw coefficients for half_degree {half_degree}, got {}",
            raw.len()
        ));
    }
    let dt = half_degree as f64;
    let coeffs: Vec<f64> = raw[..len]
        .iter()
        .enumerate()
        .map(|(k, &c)| if k <= half_degree { c } else { c * (2.0 * dt - k as f64) / dt })
        .collect();
    ChebSeries::new(coeffs)
}

pub fn eval(series: &ChebSeries, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return domain(format!("x = {x} lies outside [-1, 1]"));
    }
    Ok(series.eval_unchecked(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxCertificate {
    pub eps_target: f64,
    pub sup_err_measured: f64,
    pub grid_size: usize,
    pub max_abs_measured: f64,
}

impl ApproxCertificate {
    pub fn accepted(&self) -> bool {
        self.sup_err_measured <= self.eps_target && self.max_abs_measured <= 1.0
    }
}

/// Sup error and max |P| of a series against the target over Chebyshev–Lobatto
/// nodes. The node count is `grid_size` when it is small enough for a single
/// transform and is rounded up to a transform-friendly size otherwise.
pub fn grid_stats(series: &ChebSeries, spec: &PowerSpec, grid_size: usize) -> Result<(f64, f64, usize)> {
    if grid_size < 2 {
        return invalid("grid_size must be at least 2");
    }
    let mut err: f64 = 0.0;
    let mut max_abs: f64 = 0.0;
    let mut visit = |x: f64, p: f64| {
        err = err.max((p - spec.target(x)).abs());
        max_abs = max_abs.max(p.abs());
    };
    // Matching parities make the error symmetric, so x ≥ 0 suffices.
    let half = if series.parity == spec.parity() { grid::visit_nonnegative(series, grid_size, &mut visit) } else { None };
    let n = match half {
        Some(n) => n,
        None => grid::visit_grid(series, grid_size, &mut visit),
    };
    Ok((err, max_abs, n))
}

pub fn sup_error(series: &ChebSeries, spec: &PowerSpec, grid_size: usize) -> Result<f64> {
    grid_stats(series, spec, grid_size).map(|(e, _, _)| e)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub q_floor: f64,
    pub degree_cap: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { q_floor: DEFAULT_Q_FLOOR, degree_cap: DEFAULT_DEGREE_CAP }
    }
}

pub fn fit_for_epsilon(q: f64, eps: f64) -> Result<(ChebSeries, ApproxCertificate)> {
    fit_for_epsilon_with(q, eps, &FitOptions::default())
}

struct Search {
    spec: PowerSpec,
    raw: Vec<f64>,
    target: f64,
}

impl Search {
    fn series(&mut self, half: usize) -> Result<ChebSeries> {
        if self.raw.len() < 2 * half {
            self.raw = raw_coefficients(&self.spec, (4 * half).max(16))?;
        }
        vp_average(&self.raw, half)
    }

    fn passes(&mut self, half: usize, grid: usize) -> Result<(bool, ChebSeries, f64, f64, usize)> {
        let s = self.series(half)?;
        let (err, max_abs, n) = grid_stats(&s, &self.spec, grid)?;
        Ok((err <= self.target && max_abs <= 1.0, s, err, max_abs, n))
    }
}

// Grids of 2^m + 1 nodes keep every transform at a power-of-two length.
fn pow2_grid(nodes: usize) -> usize {
    (nodes - 1).next_power_of_two() + 1
}

fn screen_grid(half: usize) -> usize {
    pow2_grid((SCREEN_NODES_PER_DEGREE * (2 * half)).max(MIN_SCREEN_GRID))
}

fn cert_grid(degree: usize) -> usize {
    pow2_grid((CERT_NODES_PER_DEGREE * degree).max(MIN_CERT_GRID))
}

/// Smallest averaged truncation whose certified sup error is at most `0.9·eps`.
///
/// Doubling then a power-law guided bracket search on a screening grid locate
/// the smallest passing half degree to within 1/128 of its value; the winner is re-checked on
/// `max(10^5, 50·d)` nodes and nudged upward if the dense grid disagrees.
pub fn fit_for_epsilon_with(q: f64, eps: f64, opts: &FitOptions) -> Result<(ChebSeries, ApproxCertificate)> {
    let spec = derive_power_spec_with_floor(q, opts.q_floor)?;
    if !(eps > 0.0 && eps < 0.5) {
        return invalid(format!("eps must lie in (0, 1/2), got {eps}"));
    }
    let mut search = Search { spec, raw: Vec::new(), target: SAFETY * eps };
    let over_cap = |half: usize| 2 * half - 1 > opts.degree_cap;
    let cap_error = || {
        Error::Resource(format!(
            "degree cap {} reached before sup error {} at q = {q}",
            opts.degree_cap, SAFETY * eps
        ))
    };

    let (mut lo, mut e_lo) = (0usize, f64::INFINITY);
    let mut hi = 1usize;
    let mut e_hi;
    loop {
        if over_cap(hi) {
            return Err(cap_error());
        }
        let (ok, _, e, _, _) = search.passes(hi, screen_grid(hi))?;
        if ok {
            e_hi = e;
            break;
        }
        (lo, e_lo) = (hi, e);
        hi *= 2;
    }
    // Shrink [lo, hi] by probing on both sides of the power-law crossing
    // estimate; a bracket that refines poorly falls back to midpoints.
    while lo > 0 && hi - lo > (lo / BISECT_REL).max(1) {
        let tol = (lo / BISECT_REL).max(1);
        let t = (e_lo / search.target).ln() / (e_lo / e_hi).ln();
        let guess = if t.is_finite() && t > 0.0 && t < 1.0 {
            (lo as f64 * (hi as f64 / lo as f64).powf(t)).round() as usize
        } else {
            lo + (hi - lo) / 2
        };
        let below = guess.saturating_sub(tol / 2).clamp(lo + 1, hi - 1);
        let above = (below + tol).min(hi - 1);
        for probe in [below, above] {
            if probe <= lo || probe >= hi {
                continue;
            }
            let (ok, _, e, _, _) = search.passes(probe, screen_grid(probe))?;
            if ok {
                (hi, e_hi) = (probe, e);
                break;
            }
            (lo, e_lo) = (probe, e);
        }
    }

    let mut half = hi;
    loop {
        if over_cap(half) {
            return Err(cap_error());
        }
        let (ok, series, err, max_abs, n) = search.passes(half, cert_grid(2 * half - 1))?;
        if ok {
            let cert = ApproxCertificate {
                eps_target: eps,
                sup_err_measured: err,
                grid_size: n,
                max_abs_measured: max_abs,
            };
            return Ok((series, cert));
        }
        half += (half / 32).max(1);
    }
}

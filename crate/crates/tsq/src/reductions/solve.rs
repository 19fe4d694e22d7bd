//! Scalar parameters of the two state constructions.

use crate::error::{domain, Error, Result};
use crate::qcore::binary_entropy;

const RESIDUAL_TOL: f64 = 1e-12;

fn check_q(q: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&q) {
        return domain(format!("q = {q} outside [1, 2]"));
    }
    Ok(())
}

/// `d/dp H_q(p)`.
pub fn binary_entropy_slope(p: f64, q: f64) -> f64 {
    if q == 1.0 {
        ((1.0 - p) / p).ln()
    } else {
        q * ((1.0 - p).powf(q - 1.0) - p.powf(q - 1.0)) / (q - 1.0)
    }
}

/// Root of a decreasing `f` on `[0, ½]` by bisection down to adjacent floats.
fn bisect_decreasing(f: impl Fn(f64) -> f64, what: &str) -> Result<f64> {
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo > 0.0 && fhi < 0.0) {
        return Err(Error::Numerical(format!("{what}: no root bracketed, f(0) = {flo:e}, f(1/2) = {fhi:e}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    let r = f(p);
    if !(r.abs() <= RESIDUAL_TOL) || !(p > 0.0 && p < 0.5) {
        return Err(Error::Numerical(format!("{what}: residual {r:e} at p = {p}")));
    }
    Ok(p)
}

/// The right-hand bracket `H_q(½) − H_q((1−α)/2) + H_q(½)β^q`.
fn pure_rhs(q: f64, alpha: f64, beta: f64) -> f64 {
    let h = binary_entropy(0.5, q);
    h - binary_entropy(0.5 * (1.0 - alpha), q) + h * beta.powf(q)
}

fn check_pure_params(q: f64, alpha: f64, beta: f64) -> Result<()> {
    check_q(q)?;
    if !(0.0..=1.0).contains(&alpha) || !(beta >= 0.0) || !(beta + (1.0 - alpha * alpha).sqrt() < 1.0) {
        return domain(format!("need 0 <= beta and beta + sqrt(1 - alpha^2) < 1, got alpha = {alpha}, beta = {beta}"));
    }
    Ok(())
}

/// `p₀ ∈ (0, ½)` with `H_q(½) − H_q(p₀) = ½(1 − (q−1)H_q(p₀))·C`, where `C`
/// is [`pure_rhs`]. Bisection on the defining map, which decreases in `p₀`.
pub fn solve_p0(q: f64, alpha: f64, beta: f64) -> Result<f64> {
    check_pure_params(q, alpha, beta)?;
    let (h, c) = (binary_entropy(0.5, q), pure_rhs(q, alpha, beta));
    if !(c > 0.0) {
        return Err(Error::Numerical(format!("degenerate parameters: bracket C = {c:e}, the root sits at p0 = 1/2")));
    }
    bisect_decreasing(|p| h - binary_entropy(p, q) - 0.5 * (1.0 - (q - 1.0) * binary_entropy(p, q)) * c, "p0")
}

/// Same root through the closed form `H_q(p₀) = (H_q(½) − C/2)/(1 − (q−1)C/2)`,
/// inverted by safeguarded Newton steps.
pub fn solve_p0_newton(q: f64, alpha: f64, beta: f64) -> Result<f64> {
    check_pure_params(q, alpha, beta)?;
    let (h, c) = (binary_entropy(0.5, q), pure_rhs(q, alpha, beta));
    if !(c > 0.0) {
        return Err(Error::Numerical(format!("degenerate parameters: bracket C = {c:e}")));
    }
    inverse_binary_entropy_newton((h - 0.5 * c) / (1.0 - 0.5 * (q - 1.0) * c), q)
}

/// `ϑ ∈ (0, ½)` with `2H_q(ϑ) = H_q(½)`.
pub fn solve_theta(q: f64) -> Result<f64> {
    check_q(q)?;
    let h = binary_entropy(0.5, q);
    bisect_decreasing(|t| h - 2.0 * binary_entropy(t, q), "theta")
}

/// `p ∈ (0, ½)` with `H_q(p) = target`, by Newton iteration kept inside a
/// shrinking bracket.
pub fn inverse_binary_entropy_newton(target: f64, q: f64) -> Result<f64> {
    let h = binary_entropy(0.5, q);
    if !(target > 0.0 && target < h) {
        return Err(Error::Numerical(format!("target entropy {target} outside (0, H_q(1/2))")));
    }
    let (mut lo, mut hi, mut p) = (0.0f64, 0.5f64, 0.25f64);
    for _ in 0..100 {
        let r = binary_entropy(p, q) - target;
        if r.abs() <= 1e-15 {
            return Ok(p);
        }
        if r > 0.0 {
            hi = p;
        } else {
            lo = p;
        }
        let step = p - r / binary_entropy_slope(p, q);
        p = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
    }
    Ok(p)
}

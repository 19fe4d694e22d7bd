//! Distributions at a prescribed total-variation distance from uniform.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{invalid, Result};
use crate::qcore::Distribution;
use crate::rng::Rng;

const RANGE_SLACK: f64 = 1e-12;

struct Split {
    /// `⌊N(1 − γ)⌋`
    floor: usize,
    /// `N(1 − γ) − ⌊N(1 − γ)⌋`
    frac: f64,
}

fn split(n: usize, gamma: f64) -> Result<Split> {
    if n < 2 {
        return invalid("need at least two outcomes");
    }
    let nf = n as f64;
    if !(gamma >= 0.0 && gamma <= 1.0 - 1.0 / nf + RANGE_SLACK) {
        return invalid(format!("gamma = {gamma} outside [0, 1 - 1/N] for N = {n}"));
    }
    let gamma = gamma.min(1.0 - 1.0 / nf);
    let m = nf * (1.0 - gamma);
    let mut floor = m.floor();
    let mut frac = m - floor;
    // Snap values a rounding step away from an integer.
    if 1.0 - frac < 1e-12 {
        floor += 1.0;
        frac = 0.0;
    }
    Ok(Split { floor: (floor as usize).clamp(1, n), frac })
}

/// `(p_min, p_max)` at `TV(·, ν) = γ`, in sorted layout: entries that exceed
/// `1/N` come first, so the two share their above- and below-uniform index sets.
///
/// `p_min` is `1/N + γ`, then `⌊N(1−γ)⌋ − 1` entries `1/N`, then `ε/N` with
/// `ε = N(1−γ) − ⌊N(1−γ)⌋`, then zeros. `p_max` puts `1/N + γ/k` on the first
/// `k = ⌊N(1−γ)⌋` entries and spreads `ε/N` evenly over the rest.
pub fn extremal_distributions(n: usize, gamma: f64) -> Result<(Distribution, Distribution)> {
    let Split { floor, frac } = split(n, gamma)?;
    let nf = n as f64;
    let u = 1.0 / nf;
    let gamma = gamma.clamp(0.0, 1.0 - u);

    let mut p_min = vec![0.0; n];
    p_min[0] = u + gamma;
    for v in p_min.iter_mut().take(floor).skip(1) {
        *v = u;
    }
    if floor < n {
        p_min[floor] = frac * u;
    }

    let k = floor;
    let mut p_max = vec![u + gamma / k as f64; k];
    if k < n {
        p_max.extend(std::iter::repeat_n(frac / (nf * (n - k) as f64), n - k));
    }
    Ok((renormalized(p_min), renormalized(p_max)))
}

fn renormalized(mut p: Vec<f64>) -> Distribution {
    let drift = 1.0 - p.iter().sum::<f64>();
    let i = (0..p.len()).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap_or(0);
    p[i] += drift;
    Distribution::from_vec_unchecked(p)
}

/// A random distribution with `TV(p, ν) = γ`: a mixture of the two extremal
/// points, then random mass transfers inside the above-uniform and the
/// below-uniform groups (each keeps its side of `1/N`), then a shuffle.
pub fn sample_at_tv(n: usize, gamma: f64, rng: &mut Rng) -> Result<Distribution> {
    let (lo, hi) = extremal_distributions(n, gamma)?;
    let w: f64 = rng.random();
    let mut p: Vec<f64> = lo.probs().iter().zip(hi.probs()).map(|(a, b)| w * a + (1.0 - w) * b).collect();
    let u = 1.0 / n as f64;
    let top = split(n, gamma)?.floor;
    let groups = [(0usize, top), (top, n)];
    for _ in 0..2 * n {
        let (start, end) = groups[rng.random_range(0..2)];
        if end - start < 2 {
            continue;
        }
        let i = rng.random_range(start..end);
        let j = rng.random_range(start..end);
        if i == j {
            continue;
        }
        let room = if start == 0 { p[i] - u } else { p[i].min(u - p[j]) };
        if room > 0.0 {
            let t = rng.random::<f64>() * room;
            p[i] -= t;
            p[j] += t;
        }
    }
    p.shuffle(rng);
    Ok(Distribution::from_vec_unchecked(p))
}

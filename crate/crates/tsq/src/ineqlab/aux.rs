//! Scalar functions behind the commuting-maximally-mixed threshold argument,
//! with `q = 1 + 1/(n−1)`, treated as functions of a real `n`.

/// `¼(3n − n^{1+1/n} − 1)`.
pub fn threshold_t(n: f64) -> f64 {
    0.25 * (3.0 * n - n.powf(1.0 + 1.0 / n) - 1.0)
}

/// Entropy floor on states close to maximally mixed,
/// `(n−1)(1 − ½·2^{−1/(n−1)})(1 − 1/n − 2^{−n})`.
pub fn tau_yes(n: f64) -> f64 {
    (n - 1.0) * (1.0 - 0.5 * (-1.0 / (n - 1.0)).exp2()) * (1.0 - 1.0 / n - (-n).exp2())
}

/// Entropy ceiling on states far from maximally mixed, `n(1 − ½·n^{1/n})`.
pub fn tau_no(n: f64) -> f64 {
    n * (1.0 - 0.5 * n.powf(1.0 / n))
}

pub fn g1(n: f64) -> f64 {
    (-n).exp2() + (1.0 - (n / (1.0 - n)).exp2()) / n
        + (n * n / (1.0 - n)).exp2() * (n - 1.0)
        + 0.25 * n * (1.0 - (1.0 / (1.0 - n)).exp2())
}

pub fn g2(n: f64) -> f64 {
    (1.0 / (1.0 - n)).exp2() - (-n).exp2() * n
}

pub fn g3(n: f64) -> f64 {
    0.25 * n * (n.powf(1.0 / n) - (1.0 / (1.0 - n)).exp2())
}

pub fn g4(n: f64) -> f64 {
    n * (n.powf(1.0 / n) - 1.0)
}

/// `τ_yes(n) − t(n)`, which equals `g₁ + g₂ + g₃ − 7/4`.
pub fn yes_margin(n: f64) -> f64 {
    g1(n) + g2(n) + g3(n) - 1.75
}

/// `t(n) − τ_no(n) = (g₄ − 1)/4`.
pub fn no_margin(n: f64) -> f64 {
    0.25 * (g4(n) - 1.0)
}

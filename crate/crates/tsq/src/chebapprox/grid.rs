//! Fast evaluation of a Chebyshev series on Chebyshev–Lobatto nodes
//! `x_j = cos(πj/K)`, `j = 0 … K`.
//!
//! `P(cos θ_j) = Re Σ_k a_k e^{iπkj/K}` is a length-`2K` DFT of the coefficients.
//! Large grids are split into `L` interleaved subgrids `j = L·u + v`, each a DFT
//! of length `2K/L` over the coefficients folded modulo that length, which keeps
//! memory bounded.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use super::{ChebSeries, Parity};

const FFT_CAP: usize = 1 << 21;

/// Node count actually used for a request of `grid_size` nodes: `K + 1` with
/// `K = grid_size − 1` when one transform suffices, otherwise `K` rounded up
/// to a multiple of `FFT_CAP / 2`.
fn grid_k(grid_size: usize) -> usize {
    let k_req = grid_size.saturating_sub(1).max(1);
    if 2 * k_req <= FFT_CAP {
        k_req
    } else {
        (2 * k_req).div_ceil(FFT_CAP) * FFT_CAP / 2
    }
}

/// Calls `f(j, Z_j)` with `Z_j = Σ_k b_k e^{iπkj/K}` for `j = 0 … K`.
fn dft_nodes(b: &[f64], k: usize, mut f: impl FnMut(usize, Complex64)) {
    let n = 2 * k;
    let mut subgrids = n.div_ceil(FFT_CAP);
    while !n.is_multiple_of(subgrids) {
        subgrids += 1;
    }
    let fft_len = n / subgrids;
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(fft_len);
    let mut buf = vec![Complex64::new(0.0, 0.0); fft_len];
    let kf = k as f64;
    for v in 0..subgrids {
        buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for (idx, &c) in b.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            buf[idx % fft_len] += if v == 0 {
                Complex64::new(c, 0.0)
            } else {
                Complex64::from_polar(c, PI * (idx as f64) * (v as f64) / kf)
            };
        }
        fft.process(&mut buf);
        let mut u = 0;
        while subgrids * u + v <= k {
            f(subgrids * u + v, buf[u]);
            u += 1;
        }
    }
}

pub fn chebyshev_lobatto_nodes(grid_size: usize) -> Vec<f64> {
    let k = grid_k(grid_size);
    (0..=k).map(|j| (PI * j as f64 / k as f64).cos()).collect()
}

fn halved_constant(series: &ChebSeries) -> Vec<f64> {
    let mut a = series.coeffs.clone();
    if let Some(c0) = a.first_mut() {
        *c0 *= 0.5;
    }
    a
}

/// Calls `f(x_j, P(x_j))` for every node; returns the node count.
pub(crate) fn visit_grid(series: &ChebSeries, grid_size: usize, mut f: impl FnMut(f64, f64)) -> usize {
    let k = grid_k(grid_size);
    let kf = k as f64;
    dft_nodes(&halved_constant(series), k, |j, z| f((PI * j as f64 / kf).cos(), z.re));
    k + 1
}

/// Like [`visit_grid`] but only over the nodes with `x ≥ 0`, using parity to
/// halve the transform. Returns the node count of the full grid, or `None`
/// when the series has no parity or the grid has no centre node.
pub(crate) fn visit_nonnegative(series: &ChebSeries, grid_size: usize, mut f: impl FnMut(f64, f64)) -> Option<usize> {
    let k = grid_k(grid_size);
    if !k.is_multiple_of(2) || k < 4 {
        return None;
    }
    let a = halved_constant(series);
    let kf = k as f64;
    let node = |j: usize| (PI * j as f64 / kf).cos();
    match series.parity {
        Parity::None => return None,
        // cos(2lθ_j) with θ_j = πj/K is a grid of K/2 in the doubled angle.
        Parity::Even => {
            let b: Vec<f64> = a.iter().step_by(2).copied().collect();
            dft_nodes(&b, k / 2, |j, z| f(node(j), z.re));
        }
        Parity::Odd => {
            let b: Vec<f64> = a.iter().skip(1).step_by(2).copied().collect();
            dft_nodes(&b, k / 2, |j, z| {
                let theta = PI * j as f64 / kf;
                f(theta.cos(), (Complex64::from_polar(1.0, theta) * z).re)
            });
        }
    }
    Some(k + 1)
}

/// Nodes and series values on a Lobatto grid of (at least) `grid_size` points.
pub fn grid_values(series: &ChebSeries, grid_size: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::new();
    let mut vals = Vec::new();
    visit_grid(series, grid_size, |x, p| {
        nodes.push(x);
        vals.push(p);
    });
    (nodes, vals)
}

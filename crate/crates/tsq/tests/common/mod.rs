//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

// Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half) and weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let s = f(c - h * XGK[j]) + f(c + h * XGK[j]);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss-Kronrod quadrature to absolute tolerance `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, e) = gk15(f, a, b);
        if e <= tol || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, tol / 2.0, depth - 1) + rec(f, m, b, tol / 2.0, depth - 1)
    }
    rec(f, a, b, tol, 50)
}

/// `c_k = (2/π)∫₀^π f(cos θ) cos(kθ) dθ`, split at `π/2` where `|x|^s` kinks.
pub fn chebyshev_coefficient(f: &dyn Fn(f64) -> f64, k: usize, tol: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let g = move |t: f64| f(t.cos()) * (k as f64 * t).cos();
    2.0 / pi * (integrate(&g, 0.0, pi / 2.0, tol) + integrate(&g, pi / 2.0, pi, tol))
}

fn cheb_t(k: usize, x: f64) -> f64 {
    (k as f64 * x.clamp(-1.0, 1.0).acos()).cos()
}

/// Levelled error `|E|` of a discrete Remez iteration for the best degree-`n`
/// approximation of `f` on `[-1, 1]`. It bounds the true minimax error from below.
pub fn remez_error(f: &dyn Fn(f64) -> f64, n: usize) -> f64 {
    let pi = std::f64::consts::PI;
    // Chebyshev nodes plus a geometric cluster around 0, where the kink sits.
    let mut grid: Vec<f64> = (0..=40_000).map(|i| (pi * i as f64 / 40_000.0).cos()).collect();
    for j in 0..400 {
        let x = 10f64.powf(-8.0 + 8.0 * j as f64 / 400.0) * 0.5;
        grid.push(x);
        grid.push(-x);
    }
    grid.push(0.0);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let fv: Vec<f64> = grid.iter().map(|&x| f(x)).collect();

    let m = n + 2;
    let mut refs: Vec<usize> = (0..m)
        .map(|i| {
            let x = -(pi * i as f64 / (m - 1) as f64).cos();
            grid.partition_point(|&g| g < x).min(grid.len() - 1)
        })
        .collect();
    refs.dedup();
    let mut level: f64 = 0.0;
    for _ in 0..100 {
        if refs.len() != m {
            break;
        }
        let a = DMatrix::from_fn(m, m, |i, j| {
            if j < n + 1 {
                cheb_t(j, grid[refs[i]])
            } else if i % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        });
        let rhs = DVector::from_fn(m, |i, _| fv[refs[i]]);
        let Some(sol) = a.lu().solve(&rhs) else { break };
        level = sol[n + 1].abs();
        let err: Vec<f64> = grid
            .iter()
            .zip(&fv)
            .map(|(&x, &y)| y - (0..=n).map(|k| sol[k] * cheb_t(k, x)).sum::<f64>())
            .collect();
        // Extremum of each run of constant sign.
        let mut ext: Vec<usize> = Vec::new();
        let mut start = 0;
        for i in 1..=err.len() {
            if i == err.len() || (err[i] >= 0.0) != (err[start] >= 0.0) {
                let best = (start..i).max_by(|&p, &q| err[p].abs().total_cmp(&err[q].abs())).unwrap();
                ext.push(best);
                start = i;
            }
        }
        while ext.len() > m {
            let drop = if err[ext[0]].abs() < err[*ext.last().unwrap()].abs() { 0 } else { ext.len() - 1 };
            ext.remove(drop);
        }
        let max_err = err.iter().fold(0.0f64, |a, e| a.max(e.abs()));
        if ext.len() < m || (max_err - level) <= 1e-6 * max_err {
            break;
        }
        refs = ext;
    }
    level
}

/// `Pr[y]` of amplitude estimation with `M` grid points on `p = sin²(πθ)`,
/// summed directly from the phase-estimation amplitudes.
pub fn ae_outcome_probs(p: f64, m: usize) -> Vec<f64> {
    use num_complex::Complex64;
    let theta = p.sqrt().asin() / std::f64::consts::PI;
    let mf = m as f64;
    let amp = |phase: f64, y: usize| -> Complex64 {
        (0..m)
            .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 * (phase - y as f64 / mf)))
            .sum::<Complex64>()
            / mf
    };
    // The eigenphases ±θ each carry half of the initial state.
    (0..m).map(|y| 0.5 * amp(theta, y).norm_sqr() + 0.5 * amp(-theta, y).norm_sqr()).collect()
}

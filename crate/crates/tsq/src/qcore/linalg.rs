use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

/// Eigenvalues (ascending) and eigenvectors (as columns) of a Hermitian matrix.
pub fn herm_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

pub fn herm_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `U·diag(f(λ))·U†` for a Hermitian matrix with spectral decomposition `U·diag(λ)·U†`.
pub fn herm_apply(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, u) = herm_eigen(m);
    let mut scaled = u.clone();
    for (j, &l) in vals.iter().enumerate() {
        let fl = f(l);
        scaled.column_mut(j).scale_mut(fl);
    }
    hermitize(&(scaled * u.adjoint()))
}

pub fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_defect(m: &CMat) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn trace(m: &CMat) -> Complex64 {
    m.diagonal().iter().sum()
}

/// `Σ|λ_i|` of a Hermitian matrix.
pub fn trace_norm_herm(m: &CMat) -> f64 {
    herm_eigenvalues(m).iter().map(|l| l.abs()).sum()
}

/// Operator norm of a Hermitian matrix.
pub fn op_norm_herm(m: &CMat) -> f64 {
    herm_eigenvalues(m).iter().map(|l| l.abs()).fold(0.0, f64::max)
}

/// `|i⟩⟨j|` in dimension `d`.
pub fn outer_basis(d: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(d, d);
    m[(i, j)] = ONE;
    m
}

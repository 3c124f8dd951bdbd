//! Thin wrappers over the dense decompositions used throughout the crate.
//!
//! Hermitian problems whose imaginary part vanishes identically are routed to
//! the real symmetric solver, which is roughly four times cheaper.

use faer::{Mat, MatRef, Side};
use num_complex::Complex64 as c64;

use crate::error::{Error, Result};

pub(crate) const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: c64 = c64 { re: 1.0, im: 0.0 };

pub fn max_abs(a: MatRef<'_, c64>) -> f64 {
    let mut m = 0.0_f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

/// Largest |a_ij - conj(a_ji)|.
pub fn hermiticity_defect(a: MatRef<'_, c64>) -> f64 {
    let n = a.nrows();
    let mut m = 0.0_f64;
    for j in 0..n {
        for i in 0..=j {
            m = m.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    m
}

pub fn is_real(a: MatRef<'_, c64>) -> bool {
    (0..a.ncols()).all(|j| (0..a.nrows()).all(|i| a[(i, j)].im == 0.0))
}

pub fn real_part(a: MatRef<'_, c64>) -> Mat<f64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)].re)
}

pub fn to_complex(a: MatRef<'_, f64>) -> Mat<c64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| c64::new(a[(i, j)], 0.0))
}

pub fn trace(a: MatRef<'_, c64>) -> c64 {
    (0..a.nrows()).map(|i| a[(i, i)]).sum()
}

pub fn adjoint(a: MatRef<'_, c64>) -> Mat<c64> {
    a.adjoint().to_owned()
}

pub fn commutator(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> Mat<c64> {
    a * b - b * a
}

/// Eigen-decomposition of a real symmetric matrix, ascending eigenvalues.
pub fn symmetric_eigen(a: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    if a.nrows() == 0 {
        return Ok((Vec::new(), Mat::zeros(0, 0)));
    }
    let evd = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Linalg(format!("symmetric eigensolver: {e:?}")))?;
    let vals = evd.S().column_vector().iter().copied().collect();
    Ok((vals, evd.U().to_owned()))
}

/// Eigen-decomposition of a Hermitian matrix, ascending eigenvalues.
pub fn hermitian_eigen(a: MatRef<'_, c64>) -> Result<(Vec<f64>, Mat<c64>)> {
    if is_real(a) {
        let (vals, vecs) = symmetric_eigen(real_part(a).as_ref())?;
        return Ok((vals, to_complex(vecs.as_ref())));
    }
    let evd = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Linalg(format!("Hermitian eigensolver: {e:?}")))?;
    let vals = evd.S().column_vector().iter().map(|z| z.re).collect();
    Ok((vals, evd.U().to_owned()))
}

pub fn hermitian_eigenvalues(a: MatRef<'_, c64>) -> Result<Vec<f64>> {
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    if is_real(a) {
        return real_part(a)
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Linalg(format!("symmetric eigensolver: {e:?}")));
    }
    a.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Linalg(format!("Hermitian eigensolver: {e:?}")))
}

/// Eigenvalues of a general complex matrix (unordered).
pub fn eigenvalues(a: MatRef<'_, c64>) -> Result<Vec<c64>> {
    a.eigenvalues()
        .map_err(|e| Error::Linalg(format!("general eigensolver: {e:?}")))
}

/// Eigenvalues of a general real matrix (unordered).
pub fn real_eigenvalues(a: MatRef<'_, f64>) -> Result<Vec<c64>> {
    a.eigenvalues()
        .map_err(|e| Error::Linalg(format!("general eigensolver: {e:?}")))
}

/// Singular values in nonincreasing order together with the right singular
/// vectors (columns of V).
pub fn svd(a: MatRef<'_, c64>) -> Result<(Vec<f64>, Mat<c64>)> {
    let s = a.svd().map_err(|e| Error::Linalg(format!("SVD: {e:?}")))?;
    let vals = s.S().column_vector().iter().map(|z| z.re).collect();
    Ok((vals, s.V().to_owned()))
}

pub fn real_svd(a: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let s = a.svd().map_err(|e| Error::Linalg(format!("SVD: {e:?}")))?;
    let vals = s.S().column_vector().iter().copied().collect();
    Ok((vals, s.V().to_owned()))
}

pub fn singular_values(a: MatRef<'_, c64>) -> Result<Vec<f64>> {
    a.singular_values()
        .map_err(|e| Error::Linalg(format!("SVD: {e:?}")))
}

/// Apply a real function to the spectrum of a Hermitian matrix.
pub fn hermitian_function(a: MatRef<'_, c64>, f: impl Fn(f64) -> f64) -> Result<Mat<c64>> {
    let (vals, vecs) = hermitian_eigen(a)?;
    let n = vals.len();
    let scaled = Mat::from_fn(n, n, |i, j| vecs[(i, j)] * f(vals[j]));
    Ok(&scaled * vecs.adjoint())
}

/// exp(A) for a general (small to moderate) complex matrix by scaling and
/// squaring with a Taylor kernel.
pub fn expm(a: MatRef<'_, c64>) -> Mat<c64> {
    let n = a.nrows();
    let norm: f64 = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = c64::new(0.5_f64.powi(squarings as i32), 0.0);
    let x = Mat::from_fn(n, n, |i, j| a[(i, j)] * scale);
    let mut result = Mat::<c64>::identity(n, n);
    let mut term = Mat::<c64>::identity(n, n);
    for k in 1..=30 {
        term = &term * &x;
        let inv = c64::new(1.0 / k as f64, 0.0);
        term = Mat::from_fn(n, n, |i, j| term[(i, j)] * inv);
        result = &result + &term;
        if max_abs(term.as_ref()) < 1e-18 * max_abs(result.as_ref()).max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

//! Spectral functions of matrices: operator norm, positive-semidefinite
//! powers, and the operator absolute value.
//!
//! Design notes:
//! - Everything reduces to the Hermitian eigensolver. The operator norm of
//!   a rectangular A is the square root of the top eigenvalue of A*A; powers
//!   act on the spectrum and are transported back by the eigenvectors.
//! - `psd_power` tolerates the slightly negative eigenvalues that roundoff
//!   produces on genuinely PSD inputs (clamped to zero below `CLAMP_TOL`
//!   relative), but refuses matrices that are actually indefinite.

use crate::eigen::hermitian_eigen;
use crate::matrix::{ComplexMatrix, MatrixError};
use num_complex::Complex64;

/// Relative size of negative eigenvalues forgiven (clamped to zero) when a
/// matrix is supposed to be positive semidefinite.
pub const CLAMP_TOL: f64 = 1e-10;

/// Operator (spectral) norm of a rectangular matrix.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64, MatrixError> {
    let gram = a.adjoint().multiply(a)?;
    let top = hermitian_eigen(&gram)?.lambda_max();
    Ok(top.max(0.0).sqrt())
}

/// Real power `A^p` of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-CLAMP_TOL * ||A||, 0)` are clamped to zero; anything
/// more negative is a domain error. Exponents `p <= 0` are rejected: zero
/// eigenvalues make `A^0` and negative powers ill-defined here, and callers
/// that need the `p = 0` degenerate case handle it explicitly.
pub fn psd_power(a: &ComplexMatrix, p: f64) -> Result<ComplexMatrix, MatrixError> {
    if !p.is_finite() || p <= 0.0 {
        return Err(MatrixError::Domain(format!(
            "psd power needs a positive exponent, got {p}"
        )));
    }
    let e = hermitian_eigen(a)?;
    let spectral = e
        .values
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let floor = -CLAMP_TOL * spectral.max(1.0);
    let mut powered = Vec::with_capacity(e.values.len());
    for &v in &e.values {
        if v < floor {
            return Err(MatrixError::Domain(format!(
                "matrix is not positive semidefinite (eigenvalue {v:.6e})"
            )));
        }
        powered.push(if v <= 0.0 { 0.0 } else { v.powf(p) });
    }
    // V diag(powered) V*
    let n = e.values.len();
    let mut vd = e.vectors.clone();
    for j in 0..n {
        for i in 0..n {
            *vd.at_mut(i, j) = e.vectors.at(i, j) * powered[j];
        }
    }
    let result = vd.multiply(&e.vectors.adjoint())?;
    // Powers of a Hermitian matrix are Hermitian; symmetrize away roundoff.
    Ok(result.add(&result.adjoint())?.scale(Complex64::new(0.5, 0.0)))
}

/// Operator absolute value `|A| = (A* A)^{1/2}`.
pub fn abs_op(a: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    psd_power(&a.adjoint().multiply(a)?, 0.5)
}

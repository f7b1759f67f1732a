//! Hermitian eigendecomposition via cyclic complex Jacobi rotations.
//!
//! Design notes:
//! - Each pivot (p, q) is handled in two steps: a phase rotation that makes
//!   the 2x2 pivot block real symmetric, followed by the classical real
//!   Jacobi rotation that annihilates the off-diagonal entry. The combined
//!   update is a single unitary applied to both the working matrix and the
//!   accumulated eigenvector matrix.
//! - Sweeps run in cyclic order until the off-diagonal Frobenius mass drops
//!   below `TOL_EIG` relative to the input norm. For the small dense
//!   matrices this crate targets, Jacobi's quadratic convergence makes the
//!   sweep count essentially constant.
//! - Inputs must be Hermitian up to `HERMITIAN_TOL` (relative); the solver
//!   then works on the exactly symmetrized part so roundoff in the caller's
//!   arithmetic cannot leak into the spectrum.

use crate::matrix::{ComplexMatrix, MatrixError};
use num_complex::Complex64;

/// Relative off-diagonal mass at which a sweep is declared converged,
/// and the scale of the residual guarantees on the output.
pub const TOL_EIG: f64 = 1e-12;

/// Relative Hermitian defect tolerated on input matrices.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Hard cap on Jacobi sweeps; hitting it means something is badly wrong.
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
///
/// `values` are sorted ascending; column `j` of `vectors` is a unit
/// eigenvector for `values[j]`.
#[derive(Debug, Clone)]
pub struct HermEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermEigen {
    /// Largest eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        *self.values.last().expect("eigen output is never empty")
    }

    /// Column of `vectors` as an owned coordinate vector.
    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|i| self.vectors.at(i, j)).collect()
    }
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.at(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Guarantees on success, with `scale = max(1, ||A||_F)`:
/// `||A V - V D||_F <= TOL_EIG * scale` and `||V* V - I||_F <= TOL_EIG * scale`.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermEigen, MatrixError> {
    if !a.is_square() {
        return Err(MatrixError::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let fro = a.frobenius();
    if a.hermitian_defect() > HERMITIAN_TOL * fro.max(1.0) {
        return Err(MatrixError::Domain(format!(
            "matrix is not Hermitian (defect {:.3e} exceeds {:.3e})",
            a.hermitian_defect(),
            HERMITIAN_TOL * fro.max(1.0)
        )));
    }

    let n = a.rows();
    // Symmetrize exactly so tiny input defects cannot bias the sweep.
    let mut work = a.add(&a.adjoint())?.scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n)?;
    let target = TOL_EIG * fro.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&work) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = work.at(p, q);
                let m = apq.norm();
                if m <= target / (n as f64) {
                    continue;
                }
                // Phase that turns the pivot block real symmetric.
                let u = apq / m;
                let app = work.at(p, p).re;
                let aqq = work.at(q, q).re;
                let tau = (aqq - app) / (2.0 * m);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ucol = u * c;
                let uscol = u * s;

                // Columns p and q of A <- A U.
                for i in 0..n {
                    let aip = work.at(i, p);
                    let aiq = work.at(i, q);
                    *work.at_mut(i, p) = aip * ucol - aiq * s;
                    *work.at_mut(i, q) = aip * uscol + aiq * c;
                }
                // Rows p and q of A <- U* A.
                for j in 0..n {
                    let apj = work.at(p, j);
                    let aqj = work.at(q, j);
                    *work.at_mut(p, j) = apj * ucol.conj() - aqj * s;
                    *work.at_mut(q, j) = apj * uscol.conj() + aqj * c;
                }
                // The pivot entries are zero by construction; pin them to
                // keep roundoff from re-seeding the sweep.
                *work.at_mut(p, q) = Complex64::new(0.0, 0.0);
                *work.at_mut(q, p) = Complex64::new(0.0, 0.0);
                *work.at_mut(p, p) = Complex64::new(work.at(p, p).re, 0.0);
                *work.at_mut(q, q) = Complex64::new(work.at(q, q).re, 0.0);

                // Same update on the eigenvector accumulator.
                for i in 0..n {
                    let vip = v.at(i, p);
                    let viq = v.at(i, q);
                    *v.at_mut(i, p) = vip * ucol - viq * s;
                    *v.at_mut(i, q) = vip * uscol + viq * c;
                }
            }
        }
    }

    if off_diagonal_mass(&work) > target {
        return Err(MatrixError::Internal(format!(
            "Jacobi sweep did not converge in {MAX_SWEEPS} sweeps \
             (off-diagonal mass {:.3e}, target {:.3e})",
            off_diagonal_mass(&work),
            target
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| work.at(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n)?;
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..n {
            *vectors.at_mut(i, newj) = v.at(i, oldj);
        }
    }

    Ok(HermEigen { values, vectors })
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn lambda_max(a: &ComplexMatrix) -> Result<f64, MatrixError> {
    Ok(hermitian_eigen(a)?.lambda_max())
}

//! Dense complex matrices in row-major order.
//!
//! Design notes:
//! - Storage is a flat `Vec<Complex64>`, row-major; `at(i, j)` does the index
//!   arithmetic. No sparse formats, no views; every operation allocates its
//!   result. Target scale is small dense operators (n up to a few hundred),
//!   where clarity beats cleverness.
//! - Entries are validated to be finite at construction; NaN or infinite
//!   values are refused so downstream eigensolvers never see them.
//! - Zero-by-zero matrices are rejected: they have no operator meaning here.

use num_complex::Complex64;
use std::fmt;

/// Errors for matrix construction and arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixError {
    /// Shapes do not conform for the requested operation.
    Dimension(String),
    /// A value is outside the operation's domain (non-finite entry,
    /// invalid exponent, non-Hermitian input where one is required, ...).
    Domain(String),
    /// An internal self-check failed; indicates a solver bug, not bad input.
    Internal(String),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Dimension(msg) => write!(f, "dimension error: {msg}"),
            MatrixError::Domain(msg) => write!(f, "domain error: {msg}"),
            MatrixError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for MatrixError {}

/// Dense rectangular complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects empty shapes,
    /// length mismatches, and non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Dimension(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(z) = entries.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatrixError::Domain(format!("non-finite entry {z}")));
        }
        Ok(Self { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, MatrixError> {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows.max(1) * cols.max(1)])
            .map_err(|_| MatrixError::Dimension(format!("matrix must be non-empty, got {rows}x{cols}")))
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Convenience constructor from real entries (imaginary parts zero).
    pub fn from_real(rows: usize, cols: usize, real: &[f64]) -> Result<Self, MatrixError> {
        Self::new(rows, cols, real.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at row `i`, column `j` (0-based).
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    /// Mutable entry access, used by builders inside the crate.
    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); self.entries.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.at(i, j).conj();
            }
        }
        Self { rows: self.cols, cols: self.rows, entries: out }
    }

    /// Elementwise sum.
    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    /// Elementwise difference `self - other`.
    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Scalar multiple.
    pub fn scale(&self, lambda: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * lambda).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); m * n];
        for i in 0..m {
            for l in 0..k {
                let a = self.entries[i * k + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.entries[l * n + j];
                }
            }
        }
        Ok(Self { rows: m, cols: n, entries: out })
    }

    /// Matrix-vector product with an unpacked slice, `y = self * x`.
    /// Hot path for the sphere-ascent optimizers; avoids allocation churn.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(y.len(), self.rows);
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            for (a, xv) in row.iter().zip(x) {
                acc += a * xv;
            }
            y[i] = acc;
        }
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance to the adjoint, used for Hermitian-ness checks.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.at(i, j) - self.at(j, i).conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Splits a square matrix into Hermitian parts `(P, Q)` with
    /// `P = (A + A*)/2`, `Q = (A - A*)/(2i)`, so `A = P + iQ`.
    pub fn cartesian_decomposition(&self) -> Result<(Self, Self), MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Dimension(format!(
                "cartesian decomposition needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let adj = self.adjoint();
        let p = self.add(&adj)?.scale(Complex64::new(0.5, 0.0));
        // (A - A*)/(2i) = -i/2 * (A - A*)
        let q = self.sub(&adj)?.scale(Complex64::new(0.0, -0.5));
        Ok((p, q))
    }
}

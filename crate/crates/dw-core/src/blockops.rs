//! Block operator matrices and the reductions that bound their radii by a
//! small nonnegative scalar matrix.
//!
//! Design notes:
//! - A block spec is an n-by-n grid of dense blocks over a direct sum of
//!   spaces; per-space dimensions may differ, but the row and column
//!   splittings must agree so the assembled operator (and every diagonal
//!   block) is square.
//! - Each reduction rule replaces block (i, j) by one nonnegative scalar;
//!   the radius of the resulting small matrix then bounds the numerical
//!   radius (first four rules) or the Davis-Wielandt radius (last two) of
//!   the assembled operator.
//! - Scalar radii of reduced matrices use the symmetrized form
//!   `lambda_max((M + M^T) / 2)`, which for entrywise-nonnegative M equals
//!   the numerical radius.
//! - Rule names are stable interface tokens ("eq3.1a" .. "thm9") shared
//!   with the CLI and report files.

use crate::eigen::lambda_max;
use crate::functional::{abs_op, operator_norm};
use crate::matrix::{ComplexMatrix, MatrixError};
use crate::radius::numerical_radius;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

/// How one block of the grid is condensed into a scalar.
///
/// The first four rules bound the numerical radius of the assembled
/// operator, the last two bound its Davis-Wielandt radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionRule {
    /// Every block becomes its operator norm.
    Norms,
    /// Off-diagonal blocks become norms; a diagonal block A becomes the
    /// radius envelope (||A|| + ||A^2||^{1/2}) / 2.
    NormsWithEnvelopeDiagonal,
    /// Off-diagonal blocks become norms; diagonal blocks become their
    /// numerical radii.
    NormsWithRadiusDiagonal,
    /// Radius diagonal as above, but each anti-diagonal block A (position
    /// (i, n-1-i)) becomes the cross term w(|A|)^{1/2} w(|A*|)^{1/2}.
    RadiusWithCrossTerms,
    /// A diagonal block A becomes w(A) + ||A||^2, an off-diagonal one
    /// ||A|| + ||A||^2.
    ShiftedSums,
    /// A diagonal block A becomes n (w(A)^2 + ||A||^4), an off-diagonal
    /// one n (||A||^2 + ||A||^4).
    ScaledSquares,
}

impl ReductionRule {
    pub const ALL: [ReductionRule; 6] = [
        ReductionRule::Norms,
        ReductionRule::NormsWithEnvelopeDiagonal,
        ReductionRule::NormsWithRadiusDiagonal,
        ReductionRule::RadiusWithCrossTerms,
        ReductionRule::ShiftedSums,
        ReductionRule::ScaledSquares,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ReductionRule::Norms => "eq3.1a",
            ReductionRule::NormsWithEnvelopeDiagonal => "eq3.1b",
            ReductionRule::NormsWithRadiusDiagonal => "eq3.1c",
            ReductionRule::RadiusWithCrossTerms => "thm7",
            ReductionRule::ShiftedSums => "thm8",
            ReductionRule::ScaledSquares => "thm9",
        }
    }

    /// True when the reduced radius bounds the numerical radius of the
    /// assembled operator (as opposed to its Davis-Wielandt radius).
    pub fn bounds_numerical_radius(&self) -> bool {
        !matches!(self, ReductionRule::ShiftedSums | ReductionRule::ScaledSquares)
    }
}

impl fmt::Display for ReductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReductionRule {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .find(|rule| rule.as_str() == s)
            .copied()
            .ok_or_else(|| {
                MatrixError::Domain(format!(
                    "unknown reduction rule '{s}' (expected one of eq3.1a, eq3.1b, eq3.1c, thm7, thm8, thm9)"
                ))
            })
    }
}

/// An n-by-n grid of dense blocks with agreeing row and column splittings.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrixSpec {
    n: usize,
    dims: Vec<usize>,
    blocks: Vec<ComplexMatrix>,
}

impl BlockMatrixSpec {
    /// Builds a spec from blocks in row-major grid order. Block (i, j) must
    /// have shape dims[i] x dims[j], where dims is read off the diagonal.
    pub fn new(n: usize, blocks: Vec<ComplexMatrix>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::Dimension(
                "block grid needs at least one block".to_string(),
            ));
        }
        if blocks.len() != n * n {
            return Err(MatrixError::Dimension(format!(
                "block grid of side {n} needs {} blocks, got {}",
                n * n,
                blocks.len()
            )));
        }
        let mut dims = Vec::with_capacity(n);
        for i in 0..n {
            let d = &blocks[i * n + i];
            if d.rows() != d.cols() {
                return Err(MatrixError::Dimension(format!(
                    "diagonal block {i} must be square, got {}x{}",
                    d.rows(),
                    d.cols()
                )));
            }
            dims.push(d.rows());
        }
        for i in 0..n {
            for j in 0..n {
                let b = &blocks[i * n + j];
                if b.rows() != dims[i] || b.cols() != dims[j] {
                    return Err(MatrixError::Dimension(format!(
                        "block ({i}, {j}) must be {}x{}, got {}x{}",
                        dims[i],
                        dims[j],
                        b.rows(),
                        b.cols()
                    )));
                }
            }
        }
        Ok(Self { n, dims, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Per-space dimensions of the direct sum.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn block(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.blocks[i * self.n + j]
    }

    /// Flattens the grid into the full operator matrix.
    pub fn assemble(&self) -> Result<ComplexMatrix, MatrixError> {
        let total: usize = self.dims.iter().sum();
        let mut out = ComplexMatrix::zeros(total, total)?;
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, d| {
                let here = *acc;
                *acc += d;
                Some(here)
            })
            .collect();
        for i in 0..self.n {
            for j in 0..self.n {
                let b = self.block(i, j);
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        *out.at_mut(offsets[i] + r, offsets[j] + c) = b.at(r, c);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The scalar matrix a reduction rule produces, kept with its rule tag.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionMatrix {
    rule: ReductionRule,
    n: usize,
    entries: Vec<f64>,
}

impl ReductionMatrix {
    pub fn rule(&self) -> ReductionRule {
        self.rule
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Radius of the reduced matrix; this is the bound value.
    pub fn radius(&self) -> Result<f64, MatrixError> {
        w_nonneg(&self.entries, self.n)
    }
}

fn radius_envelope(a: &ComplexMatrix) -> Result<f64, MatrixError> {
    let norm = operator_norm(a)?;
    let sq_norm = operator_norm(&a.multiply(a)?)?;
    Ok(0.5 * (norm + sq_norm.sqrt()))
}

fn cross_term(a: &ComplexMatrix) -> Result<f64, MatrixError> {
    let left = numerical_radius(&abs_op(a)?)?.value;
    let right = numerical_radius(&abs_op(&a.adjoint())?)?.value;
    Ok((left * right).sqrt())
}

/// Condenses every block into a scalar according to `rule`.
pub fn reduction_matrix(
    spec: &BlockMatrixSpec,
    rule: ReductionRule,
) -> Result<ReductionMatrix, MatrixError> {
    let n = spec.n();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let b = spec.block(i, j);
            let value = match rule {
                ReductionRule::Norms => operator_norm(b)?,
                ReductionRule::NormsWithEnvelopeDiagonal => {
                    if i == j {
                        radius_envelope(b)?
                    } else {
                        operator_norm(b)?
                    }
                }
                ReductionRule::NormsWithRadiusDiagonal => {
                    if i == j {
                        numerical_radius(b)?.value
                    } else {
                        operator_norm(b)?
                    }
                }
                ReductionRule::RadiusWithCrossTerms => {
                    if i == j {
                        numerical_radius(b)?.value
                    } else if j == n - 1 - i {
                        cross_term(b)?
                    } else {
                        operator_norm(b)?
                    }
                }
                ReductionRule::ShiftedSums => {
                    let norm = operator_norm(b)?;
                    let head =
                        if i == j { numerical_radius(b)?.value } else { norm };
                    head + norm * norm
                }
                ReductionRule::ScaledSquares => {
                    let norm = operator_norm(b)?;
                    let head =
                        if i == j { numerical_radius(b)?.value } else { norm };
                    n as f64 * (head * head + norm.powi(4))
                }
            };
            entries.push(value);
        }
    }
    Ok(ReductionMatrix { rule, n, entries })
}

/// Numerical radius of an entrywise-nonnegative real matrix, computed as
/// `lambda_max((M + M^T) / 2)`. Entries are given row-major with side `n`.
pub fn w_nonneg(entries: &[f64], n: usize) -> Result<f64, MatrixError> {
    if n == 0 || entries.len() != n * n {
        return Err(MatrixError::Dimension(format!(
            "nonnegative radius needs n*n entries for side {n}, got {}",
            entries.len()
        )));
    }
    let mut sym = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let a = entries[i * n + j];
            let b = entries[j * n + i];
            if !(a.is_finite() && a >= 0.0) {
                return Err(MatrixError::Domain(format!(
                    "nonnegative radius got entry {a} at ({i}, {j})"
                )));
            }
            sym.push(Complex64::new(0.5 * (a + b), 0.0));
        }
    }
    lambda_max(&ComplexMatrix::new(n, n, sym)?)
}

/// Upper bound on the numerical radius of the assembled operator through
/// one of the radius-targeting reduction rules.
pub fn w_block_upper(spec: &BlockMatrixSpec, rule: ReductionRule) -> Result<f64, MatrixError> {
    if !rule.bounds_numerical_radius() {
        return Err(MatrixError::Domain(format!(
            "rule '{rule}' bounds the Davis-Wielandt radius, not the numerical radius"
        )));
    }
    reduction_matrix(spec, rule)?.radius()
}

/// Upper bound on the Davis-Wielandt radius of the assembled operator:
/// the radius of the shifted-sums reduction.
pub fn dw_block_upper(spec: &BlockMatrixSpec) -> Result<f64, MatrixError> {
    reduction_matrix(spec, ReductionRule::ShiftedSums)?.radius()
}

/// Two-sided bound on the Davis-Wielandt radius of the assembled operator
/// T: lower `||T + T*T|| / sqrt(2)`, upper the square root of the radius
/// of the scaled-squares reduction.
pub fn dw_block_sandwich(spec: &BlockMatrixSpec) -> Result<(f64, f64), MatrixError> {
    let t = spec.assemble()?;
    let shifted = t.add(&t.adjoint().multiply(&t)?)?;
    let lower = operator_norm(&shifted)? / 2f64.sqrt();
    let upper = reduction_matrix(spec, ReductionRule::ScaledSquares)?.radius()?.max(0.0).sqrt();
    Ok((lower, upper))
}

/// Closed form of the scaled-squares upper bound for a 2-by-2 grid:
/// `sqrt(a + d + sqrt((a-d)^2 + (b+c)^2))` where a and d are
/// w^2 + ||.||^4 of the diagonal blocks and b, c are ||.||^2 + ||.||^4 of
/// the off-diagonal ones. Agrees with `dw_block_sandwich`'s upper within
/// rounding.
pub fn dw_2x2_closed_form(spec: &BlockMatrixSpec) -> Result<f64, MatrixError> {
    if spec.n() != 2 {
        return Err(MatrixError::Dimension(format!(
            "closed form needs a 2x2 block grid, got side {}",
            spec.n()
        )));
    }
    let diag = |b: &ComplexMatrix| -> Result<f64, MatrixError> {
        let w = numerical_radius(b)?.value;
        let norm = operator_norm(b)?;
        Ok(w * w + norm.powi(4))
    };
    let off = |b: &ComplexMatrix| -> Result<f64, MatrixError> {
        let norm = operator_norm(b)?;
        Ok(norm * norm + norm.powi(4))
    };
    let a = diag(spec.block(0, 0))?;
    let d = diag(spec.block(1, 1))?;
    let b = off(spec.block(0, 1))?;
    let c = off(spec.block(1, 0))?;
    Ok((a + d + ((a - d).powi(2) + (b + c).powi(2)).sqrt()).sqrt())
}

//! Numerical radius, Davis-Wielandt radius, and their tuple generalizations.
//!
//! Three computational strategies live here:
//! - `rotation-scan`: the numerical radius is the maximum over angles of the
//!   top eigenvalue of the rotated Hermitian part. A 720-point grid locates
//!   the peaks, then golden-section refinement pins the best three brackets
//!   down to 1e-10 in angle. Deterministic, certificate is the angle.
//! - `sphere-ascent`: Davis-Wielandt and the generalized tuple radii are
//!   suprema of smooth objectives over the unit sphere. Projected gradient
//!   ascent with backtracking runs from deterministic warm starts (which
//!   guarantee the known lower envelopes) plus seeded random restarts.
//!   Certificate is the best unit vector, so the result is a certified
//!   lower estimate of the true value.
//! - `grid-oracle`: for 2x2 matrices only, brute-force parametrization of
//!   the sphere by two angles. Slow and independent of the ascent code, so
//!   it is the cross-check of choice in tests.

use crate::eigen::hermitian_eigen;
use crate::matrix::{ComplexMatrix, MatrixError};
use crate::rng::{random_unit_vector, restart_stream, seed_stream};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};

/// Angular resolution of the rotation-scan refinement.
pub const THETA_TOL: f64 = 1e-10;

/// Grid size for the initial rotation scan.
const THETA_GRID: usize = 720;

/// Iteration cap for a single projected-ascent run.
const MAX_ASCENT_ITERS: usize = 2000;

/// Smallest backtracking step before a line search gives up.
const STEP_FLOOR: f64 = 1e-18;

/// Magnitude below which a component is treated as zero when picking the
/// phase-normalization pivot of a certificate vector.
const PHASE_EPS: f64 = 1e-12;

/// Quadratic-form magnitude below which a power-sum gradient term is
/// dropped; the analytic limit of the term is zero for exponents above one.
const Q_GUARD: f64 = 1e-14;

/// How a radius value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    RotationScan,
    SphereAscent,
    GridOracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::RotationScan => "rotation-scan",
            Method::SphereAscent => "sphere-ascent",
            Method::GridOracle => "grid-oracle",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Witness that reproduces a radius value.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Maximizing rotation angle in `[0, 2*pi)`.
    Angle(f64),
    /// Maximizing unit vector, phase-normalized so its first component of
    /// noticeable size is real and nonnegative.
    Vector(Vec<Complex64>),
}

/// Result of a radius computation.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusResult {
    /// The computed radius, always nonnegative.
    pub value: f64,
    /// Witness reproducing `value` within `tol`.
    pub certificate: Certificate,
    pub method: Method,
    /// Ascent runs performed (warm starts plus random restarts); zero for
    /// the deterministic methods.
    pub restarts_used: usize,
    /// Tolerance the certificate honors.
    pub tol: f64,
}

/// Knobs for the sphere-ascent methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentOptions {
    /// Random restarts in addition to the deterministic warm starts.
    pub restarts: usize,
    /// Seed for the restart streams.
    pub seed: u64,
    /// Convergence tolerance on the projected gradient, relative to the
    /// objective value.
    pub tol: f64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        Self { restarts: 64, seed: 1, tol: 1e-6 }
    }
}

/// One sampled point of the Davis-Wielandt shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellPoint {
    /// Real part of the quadratic form of the matrix at the sample vector.
    pub re_z: f64,
    /// Imaginary part of the same quadratic form.
    pub im_z: f64,
    /// Squared norm of the matrix applied to the sample vector.
    pub r: f64,
}

fn require_square(a: &ComplexMatrix, what: &str) -> Result<(), MatrixError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(MatrixError::Dimension(format!(
            "{what} needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

fn require_uniform_tuple(tuple: &[ComplexMatrix], what: &str) -> Result<usize, MatrixError> {
    let first = tuple.first().ok_or_else(|| {
        MatrixError::Dimension(format!("{what} needs at least one matrix"))
    })?;
    require_square(first, what)?;
    let n = first.rows();
    for t in tuple {
        require_square(t, what)?;
        if t.rows() != n {
            return Err(MatrixError::Dimension(format!(
                "{what} needs matrices of one size, got {}x{} next to {n}x{n}",
                t.rows(),
                t.cols()
            )));
        }
    }
    Ok(n)
}

/// Hermitian part of `e^{i theta} S`.
fn rotated_hermitian_part(s: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix, MatrixError> {
    let rot = s.scale(Complex64::from_polar(1.0, theta));
    Ok(rot.add(&rot.adjoint())?.scale(Complex64::new(0.5, 0.0)))
}

fn golden_max<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64), MatrixError>
where
    F: FnMut(f64) -> Result<f64, MatrixError>,
{
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc < fd {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d)?;
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c)?;
        }
    }
    let mid = 0.5 * (a + b);
    let fmid = f(mid)?;
    Ok((mid, fmid))
}

/// Numerical radius by rotation scan.
///
/// The value is the maximum over the angle grid and the refined brackets;
/// the certificate angle reproduces it by a single Hermitian eigensolve.
pub fn numerical_radius(s: &ComplexMatrix) -> Result<RadiusResult, MatrixError> {
    require_square(s, "numerical radius")?;
    let mut eval = |theta: f64| -> Result<f64, MatrixError> {
        Ok(hermitian_eigen(&rotated_hermitian_part(s, theta)?)?.lambda_max())
    };

    let step = TAU / THETA_GRID as f64;
    let mut grid = Vec::with_capacity(THETA_GRID);
    for k in 0..THETA_GRID {
        let theta = k as f64 * step;
        grid.push((eval(theta)?, theta));
    }
    let mut order: Vec<usize> = (0..THETA_GRID).collect();
    order.sort_by(|&i, &j| grid[j].0.partial_cmp(&grid[i].0).expect("finite eigenvalues"));

    let (mut best_val, mut best_theta) = grid[order[0]];
    for &k in order.iter().take(3) {
        let center = grid[k].1;
        let (theta, val) = golden_max(&mut eval, center - step, center + step, THETA_TOL)?;
        if val > best_val {
            best_val = val;
            best_theta = theta;
        }
    }

    Ok(RadiusResult {
        value: best_val,
        certificate: Certificate::Angle(best_theta.rem_euclid(TAU)),
        method: Method::RotationScan,
        restarts_used: 0,
        tol: THETA_TOL,
    })
}

// ---------------------------------------------------------------------------
// Sphere-ascent engine
// ---------------------------------------------------------------------------

enum ObjectiveKind {
    /// Sum over the tuple of |<T_k x, x>|^p.
    PowerSum { p: f64 },
    /// Sum over the tuple of |<T_k x, x>|^2 + ||T_k x||^4.
    DwSum,
}

struct SphereObjective<'a> {
    kind: ObjectiveKind,
    mats: &'a [ComplexMatrix],
    adjoints: Vec<ComplexMatrix>,
    grams: Vec<ComplexMatrix>,
    dim: usize,
}

impl<'a> SphereObjective<'a> {
    fn power_sum(mats: &'a [ComplexMatrix], p: f64) -> Result<Self, MatrixError> {
        let dim = require_uniform_tuple(mats, "generalized radius")?;
        Ok(Self {
            kind: ObjectiveKind::PowerSum { p },
            mats,
            adjoints: mats.iter().map(|t| t.adjoint()).collect(),
            grams: Vec::new(),
            dim,
        })
    }

    fn dw_sum(mats: &'a [ComplexMatrix]) -> Result<Self, MatrixError> {
        let dim = require_uniform_tuple(mats, "Davis-Wielandt radius")?;
        let adjoints: Vec<ComplexMatrix> = mats.iter().map(|t| t.adjoint()).collect();
        let grams = adjoints
            .iter()
            .zip(mats)
            .map(|(adj, t)| adj.multiply(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { kind: ObjectiveKind::DwSum, mats, adjoints, grams, dim })
    }

    fn eval(&self, x: &[Complex64], tx: &mut [Complex64]) -> f64 {
        let mut total = 0.0;
        for t in self.mats {
            t.matvec(x, tx);
            let q: Complex64 = x.iter().zip(tx.iter()).map(|(xi, yi)| xi.conj() * yi).sum();
            match self.kind {
                ObjectiveKind::PowerSum { p } => {
                    total += if p == 2.0 { q.norm_sqr() } else { q.norm().powf(p) };
                }
                ObjectiveKind::DwSum => {
                    let r: f64 = tx.iter().map(|z| z.norm_sqr()).sum();
                    total += q.norm_sqr() + r * r;
                }
            }
        }
        total
    }

    fn grad(&self, x: &[Complex64], g: &mut [Complex64], tx: &mut [Complex64], sx: &mut [Complex64]) {
        for gi in g.iter_mut() {
            *gi = Complex64::new(0.0, 0.0);
        }
        for (k, t) in self.mats.iter().enumerate() {
            t.matvec(x, tx);
            let q: Complex64 = x.iter().zip(tx.iter()).map(|(xi, yi)| xi.conj() * yi).sum();
            self.adjoints[k].matvec(x, sx);
            match self.kind {
                ObjectiveKind::PowerSum { p } => {
                    let qn = q.norm();
                    if qn < Q_GUARD {
                        continue;
                    }
                    let weight = p * qn.powf(p - 2.0);
                    for i in 0..self.dim {
                        g[i] += weight * (q.conj() * tx[i] + q * sx[i]);
                    }
                }
                ObjectiveKind::DwSum => {
                    let r: f64 = tx.iter().map(|z| z.norm_sqr()).sum();
                    for i in 0..self.dim {
                        g[i] += 2.0 * (q.conj() * tx[i] + q * sx[i]);
                    }
                    self.grams[k].matvec(x, sx);
                    for i in 0..self.dim {
                        g[i] += 4.0 * r * sx[i];
                    }
                }
            }
        }
    }
}

fn normalize_in_place(x: &mut [Complex64]) {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in x.iter_mut() {
            *z /= norm;
        }
    }
}

/// One projected-ascent run from `x0`; returns the objective value and the
/// unit vector it was attained at.
fn ascend(obj: &SphereObjective<'_>, x0: &[Complex64], tol: f64) -> (f64, Vec<Complex64>) {
    let n = obj.dim;
    let mut x = x0.to_vec();
    normalize_in_place(&mut x);
    let mut tx = vec![Complex64::new(0.0, 0.0); n];
    let mut sx = vec![Complex64::new(0.0, 0.0); n];
    let mut g = vec![Complex64::new(0.0, 0.0); n];
    let mut cand = vec![Complex64::new(0.0, 0.0); n];

    let mut f = obj.eval(&x, &mut tx);
    for _ in 0..MAX_ASCENT_ITERS {
        obj.grad(&x, &mut g, &mut tx, &mut sx);
        // Project onto the tangent space of the sphere.
        let radial: f64 = x.iter().zip(g.iter()).map(|(xi, gi)| (gi.conj() * xi).re).sum();
        for i in 0..n {
            g[i] -= radial * x[i];
        }
        let gnorm = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if gnorm <= tol * f.max(1.0) {
            break;
        }
        let mut step = 0.5;
        let mut improved = false;
        while step > STEP_FLOOR {
            for i in 0..n {
                cand[i] = x[i] + step * g[i];
            }
            normalize_in_place(&mut cand);
            let fc = obj.eval(&cand, &mut tx);
            if fc > f {
                std::mem::swap(&mut x, &mut cand);
                f = fc;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (f, x)
}

/// Best objective value over warm starts plus seeded random restarts.
/// Ties keep the earliest run, so results are reproducible run to run.
fn sphere_max(
    obj: &SphereObjective<'_>,
    warm: &[Vec<Complex64>],
    opts: &AscentOptions,
) -> Result<(f64, Vec<Complex64>, usize), MatrixError> {
    if !(opts.tol.is_finite() && opts.tol > 0.0) {
        return Err(MatrixError::Domain(format!(
            "ascent tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let mut best_f = f64::NEG_INFINITY;
    let mut best_x: Option<Vec<Complex64>> = None;
    let mut runs = 0;
    for x0 in warm {
        let (f, x) = ascend(obj, x0, opts.tol);
        runs += 1;
        if f > best_f {
            best_f = f;
            best_x = Some(x);
        }
    }
    for idx in 0..opts.restarts {
        let mut rng = restart_stream(opts.seed, idx as u64);
        let x0 = random_unit_vector(&mut rng, obj.dim);
        let (f, x) = ascend(obj, &x0, opts.tol);
        runs += 1;
        if f > best_f {
            best_f = f;
            best_x = Some(x);
        }
    }
    let x = best_x.ok_or_else(|| {
        MatrixError::Internal("sphere ascent ran zero starts".to_string())
    })?;
    Ok((best_f, x, runs))
}

/// Rotates a certificate vector so its first component of noticeable size
/// is real and nonnegative, then renormalizes.
fn phase_normalize(mut x: Vec<Complex64>) -> Vec<Complex64> {
    if let Some(pivot) = x.iter().find(|z| z.norm() > PHASE_EPS) {
        let phase = pivot / pivot.norm();
        let correction = phase.conj();
        for z in x.iter_mut() {
            *z *= correction;
        }
    }
    normalize_in_place(&mut x);
    x
}

/// Warm start from the top eigenvector of the rotated Hermitian part at the
/// numerical radius' maximizing angle. At this vector the objective already
/// sees the numerical radius, so the ascent result can only be larger.
fn radius_angle_start(s: &ComplexMatrix) -> Result<(RadiusResult, Vec<Complex64>), MatrixError> {
    let w = numerical_radius(s)?;
    let theta = match w.certificate {
        Certificate::Angle(t) => t,
        Certificate::Vector(_) => {
            return Err(MatrixError::Internal(
                "rotation scan produced a vector certificate".to_string(),
            ))
        }
    };
    let h = rotated_hermitian_part(s, theta)?;
    let e = hermitian_eigen(&h)?;
    Ok((w, e.vector(s.rows() - 1)))
}

/// Davis-Wielandt radius by projected sphere ascent.
///
/// Deterministic warm starts pin the result above both the numerical radius
/// and the squared operator norm before any random restart runs, and the
/// result is checked against that floor. The value is a certified lower
/// estimate: the certificate vector reproduces it exactly.
pub fn dw_radius(s: &ComplexMatrix, opts: &AscentOptions) -> Result<RadiusResult, MatrixError> {
    require_square(s, "Davis-Wielandt radius")?;
    let mats = std::slice::from_ref(s).to_vec();
    let obj = SphereObjective::dw_sum(&mats)?;

    let (w, warm_angle) = radius_angle_start(s)?;
    let gram_eig = hermitian_eigen(&obj.grams[0])?;
    let norm_sq = gram_eig.lambda_max().max(0.0);
    let warm_gram = gram_eig.vector(s.rows() - 1);

    let (f, x, runs) = sphere_max(&obj, &[warm_angle, warm_gram], opts)?;
    let value = f.max(0.0).sqrt();

    let floor = w.value.max(norm_sq);
    if value < floor - opts.tol {
        return Err(MatrixError::Internal(format!(
            "Davis-Wielandt ascent returned {value:.12e}, below its floor {floor:.12e}"
        )));
    }

    Ok(RadiusResult {
        value,
        certificate: Certificate::Vector(phase_normalize(x)),
        method: Method::SphereAscent,
        restarts_used: runs,
        tol: opts.tol,
    })
}

/// Generalized radius of a tuple: the supremum over unit vectors of the
/// p-th root of the summed |<T_k x, x>|^p.
pub fn gen_radius_p(
    tuple: &[ComplexMatrix],
    p: f64,
    opts: &AscentOptions,
) -> Result<RadiusResult, MatrixError> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(MatrixError::Domain(format!(
            "generalized radius needs an exponent of at least one, got {p}"
        )));
    }
    let obj = SphereObjective::power_sum(tuple, p)?;

    let mut warm = Vec::with_capacity(tuple.len());
    let mut w_floor = 0.0f64;
    for t in tuple {
        let (w, start) = radius_angle_start(t)?;
        w_floor = w_floor.max(w.value);
        warm.push(start);
    }

    let (f, x, runs) = sphere_max(&obj, &warm, opts)?;
    let value = f.max(0.0).powf(1.0 / p);

    if value < w_floor - opts.tol {
        return Err(MatrixError::Internal(format!(
            "generalized radius ascent returned {value:.12e}, below its floor {w_floor:.12e}"
        )));
    }

    Ok(RadiusResult {
        value,
        certificate: Certificate::Vector(phase_normalize(x)),
        method: Method::SphereAscent,
        restarts_used: runs,
        tol: opts.tol,
    })
}

/// Euclidean radius of a tuple: the generalized radius at exponent two.
pub fn euclid_radius(
    tuple: &[ComplexMatrix],
    opts: &AscentOptions,
) -> Result<RadiusResult, MatrixError> {
    gen_radius_p(tuple, 2.0, opts)
}

/// Euclidean Davis-Wielandt radius of a tuple: the supremum over unit
/// vectors of sqrt(sum of |<T_k x, x>|^2 + ||T_k x||^4).
pub fn dw_euclid(
    tuple: &[ComplexMatrix],
    opts: &AscentOptions,
) -> Result<RadiusResult, MatrixError> {
    let obj = SphereObjective::dw_sum(tuple)?;

    let mut warm = Vec::with_capacity(2 * tuple.len());
    let mut floor = 0.0f64;
    for (k, t) in tuple.iter().enumerate() {
        let (w, start) = radius_angle_start(t)?;
        floor = floor.max(w.value);
        warm.push(start);
        let gram_eig = hermitian_eigen(&obj.grams[k])?;
        floor = floor.max(gram_eig.lambda_max().max(0.0));
        warm.push(gram_eig.vector(t.rows() - 1));
    }

    let (f, x, runs) = sphere_max(&obj, &warm, opts)?;
    let value = f.max(0.0).sqrt();

    if value < floor - opts.tol {
        return Err(MatrixError::Internal(format!(
            "tuple Davis-Wielandt ascent returned {value:.12e}, below its floor {floor:.12e}"
        )));
    }

    Ok(RadiusResult {
        value,
        certificate: Certificate::Vector(phase_normalize(x)),
        method: Method::SphereAscent,
        restarts_used: runs,
        tol: opts.tol,
    })
}

/// Raw Davis-Wielandt objective |<S x, x>|^2 + ||S x||^4 at an arbitrary
/// (not necessarily unit) vector. Public so tests can difference it.
pub fn dw_objective(s: &ComplexMatrix, x: &[Complex64]) -> Result<f64, MatrixError> {
    require_square(s, "Davis-Wielandt objective")?;
    if x.len() != s.rows() {
        return Err(MatrixError::Dimension(format!(
            "vector of length {} against a {0}x{0} matrix",
            s.rows()
        )));
    }
    let mut tx = vec![Complex64::new(0.0, 0.0); x.len()];
    s.matvec(x, &mut tx);
    let q: Complex64 = x.iter().zip(tx.iter()).map(|(xi, yi)| xi.conj() * yi).sum();
    let r: f64 = tx.iter().map(|z| z.norm_sqr()).sum();
    Ok(q.norm_sqr() + r * r)
}

/// Gradient of `dw_objective` in the real embedding: entry `i` carries the
/// derivative along the real part of `x_i` in its real part and along the
/// imaginary part of `x_i` in its imaginary part.
pub fn dw_gradient(s: &ComplexMatrix, x: &[Complex64]) -> Result<Vec<Complex64>, MatrixError> {
    require_square(s, "Davis-Wielandt gradient")?;
    if x.len() != s.rows() {
        return Err(MatrixError::Dimension(format!(
            "vector of length {} against a {0}x{0} matrix",
            s.rows()
        )));
    }
    let n = x.len();
    let adj = s.adjoint();
    let gram = adj.multiply(s)?;
    let mut tx = vec![Complex64::new(0.0, 0.0); n];
    let mut sx = vec![Complex64::new(0.0, 0.0); n];
    let mut gx = vec![Complex64::new(0.0, 0.0); n];
    s.matvec(x, &mut tx);
    adj.matvec(x, &mut sx);
    gram.matvec(x, &mut gx);
    let q: Complex64 = x.iter().zip(tx.iter()).map(|(xi, yi)| xi.conj() * yi).sum();
    let r: f64 = tx.iter().map(|z| z.norm_sqr()).sum();
    Ok((0..n)
        .map(|i| 2.0 * (q.conj() * tx[i] + q * sx[i]) + 4.0 * r * gx[i])
        .collect())
}

/// Brute-force Davis-Wielandt radius for 2x2 matrices.
///
/// Unit vectors are parametrized as (cos a, e^{i b} sin a); the objective is
/// evaluated on a full grid, then once more on a fine grid around the best
/// cell. Entirely independent of the ascent code path.
pub fn dw_oracle_2x2(s: &ComplexMatrix, grid: usize) -> Result<RadiusResult, MatrixError> {
    if s.rows() != 2 || s.cols() != 2 {
        return Err(MatrixError::Dimension(format!(
            "grid oracle handles 2x2 matrices only, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    if grid < 8 {
        return Err(MatrixError::Domain(format!(
            "grid oracle needs at least 8 points per axis, got {grid}"
        )));
    }
    let gram = s.adjoint().multiply(s)?;
    let (s00, s01, s10, s11) = (s.at(0, 0), s.at(0, 1), s.at(1, 0), s.at(1, 1));
    let (g00, g01, g11) = (gram.at(0, 0).re, gram.at(0, 1), gram.at(1, 1).re);

    // f at (a, b) with c = cos a, t = sin a, e = e^{ib}:
    //   q = c^2 s00 + t^2 s11 + c t (e s01 + conj(e) s10)
    //   r = c^2 g00 + t^2 g11 + 2 c t Re(e g01)
    let cell = |ca: f64, sa: f64, cross_q: Complex64, cross_r: f64| -> f64 {
        let (cc, ss, cs) = (ca * ca, sa * sa, ca * sa);
        let q = s00 * cc + s11 * ss + cross_q * cs;
        let r = g00 * cc + g11 * ss + cross_r * cs;
        q.norm_sqr() + r * r
    };

    let scan = |a_lo: f64, a_hi: f64, b_lo: f64, b_hi: f64, na: usize, nb: usize| -> (f64, f64, f64) {
        let phases: Vec<(Complex64, f64)> = (0..nb)
            .map(|j| {
                let b = b_lo + (b_hi - b_lo) * j as f64 / nb as f64;
                let e = Complex64::from_polar(1.0, b);
                (e * s01 + e.conj() * s10, 2.0 * (e * g01).re)
            })
            .collect();
        let mut best = (f64::NEG_INFINITY, a_lo, b_lo);
        for i in 0..na {
            let a = a_lo + (a_hi - a_lo) * i as f64 / (na - 1) as f64;
            let (ca, sa) = (a.cos(), a.sin());
            for (j, &(cross_q, cross_r)) in phases.iter().enumerate() {
                let f = cell(ca, sa, cross_q, cross_r);
                if f > best.0 {
                    let b = b_lo + (b_hi - b_lo) * j as f64 / nb as f64;
                    best = (f, a, b);
                }
            }
        }
        best
    };

    let coarse = scan(0.0, FRAC_PI_2, 0.0, TAU, grid, grid);
    let da = FRAC_PI_2 / (grid - 1) as f64;
    let db = TAU / grid as f64;
    let fine = scan(
        (coarse.1 - 2.0 * da).max(0.0),
        (coarse.1 + 2.0 * da).min(FRAC_PI_2),
        coarse.2 - 2.0 * db,
        coarse.2 + 2.0 * db,
        129,
        129,
    );
    let (f_best, a_best, b_best) = if fine.0 > coarse.0 { fine } else { coarse };

    let x = vec![
        Complex64::new(a_best.cos(), 0.0),
        Complex64::from_polar(a_best.sin(), b_best),
    ];
    Ok(RadiusResult {
        value: f_best.max(0.0).sqrt(),
        certificate: Certificate::Vector(phase_normalize(x)),
        method: Method::GridOracle,
        restarts_used: 0,
        tol: 1e-12,
    })
}

/// Samples the Davis-Wielandt shell at seeded random unit vectors: each
/// point is the quadratic form (as a complex number) together with the
/// squared image norm.
pub fn sample_shell(
    s: &ComplexMatrix,
    count: usize,
    seed: u64,
) -> Result<Vec<ShellPoint>, MatrixError> {
    require_square(s, "shell sampling")?;
    let n = s.rows();
    let mut rng = seed_stream(seed);
    let mut tx = vec![Complex64::new(0.0, 0.0); n];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let x = random_unit_vector(&mut rng, n);
        s.matvec(&x, &mut tx);
        let q: Complex64 = x.iter().zip(tx.iter()).map(|(xi, yi)| xi.conj() * yi).sum();
        let r: f64 = tx.iter().map(|z| z.norm_sqr()).sum();
        out.push(ShellPoint { re_z: q.re, im_z: q.im, r });
    }
    Ok(out)
}

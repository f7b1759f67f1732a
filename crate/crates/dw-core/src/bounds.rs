//! Closed-form bounds on the Davis-Wielandt radius and its relatives, and
//! the report that checks them against the computed value.
//!
//! Design notes:
//! - Each evaluator returns values on the natural scale of the quantity it
//!   bounds (documented per function); `assemble_report` normalizes the
//!   single-matrix family onto the Davis-Wielandt scale so every record is
//!   directly comparable with the ascent estimate.
//! - Record ids ("eq1.1-lower", "thm3-upper", ...) are stable interface
//!   tokens: report files and the CLI key on them, so they never change
//!   even when the formula behind one is refined.
//! - Two families bound other targets and are therefore kept out of the
//!   single-matrix chain: the squared-radius sandwich (`w_square_sandwich`,
//!   `wp_tuple_sandwich`) and, for exponents other than one, the power
//!   sandwich (`dwp_sandwich`), which bounds the order-2p radius of the
//!   pair (S, S*S) rather than the plain Davis-Wielandt radius.
//! - Where a published constant turned out not to survive testing, the
//!   evaluator carries the nearest provable constant instead; the doc
//!   comment on each such function states the exact form implemented.

use crate::eigen::hermitian_eigen;
use crate::functional::{abs_op, operator_norm, psd_power};
use crate::matrix::{ComplexMatrix, MatrixError};
use crate::radius::{dw_radius, euclid_radius, numerical_radius, AscentOptions};
use std::collections::BTreeMap;

/// Relative slack allowed when the chain check compares a bound against the
/// ascent estimate.
pub const CHAIN_SLACK: f64 = 1e-6;

/// Which side of a sandwich a record sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        }
    }
}

/// One evaluated bound, on the Davis-Wielandt scale.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRecord {
    /// Stable id, e.g. "thm4-upper1".
    pub id: &'static str,
    pub kind: BoundKind,
    pub value: f64,
    /// Named parameters the bound was evaluated at (empty when none).
    pub params: BTreeMap<String, f64>,
}

/// Parameters for the parametrized bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    /// Interpolation weight, in [0, 1].
    pub alpha: f64,
    /// Power for the r-parametrized uppers; at least 2 (the even-power
    /// variant accepts r down to 1 when called directly).
    pub r: f64,
    /// Exponent of the power sandwich; at least 1.
    pub p: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self { alpha: 0.5, r: 2.0, p: 1.0 }
    }
}

/// Full bound evaluation against the ascent estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub dim: usize,
    /// Numerical radius (rotation scan).
    pub w: f64,
    /// Operator norm.
    pub operator_norm: f64,
    /// Davis-Wielandt estimate (sphere ascent, certified from below).
    pub dw_est: f64,
    /// Ascent runs behind `dw_est`.
    pub restarts_used: usize,
    pub params: BoundParams,
    pub records: Vec<BoundRecord>,
    /// True when every in-chain lower sits below `dw_est` and every
    /// in-chain upper above it, within `slack`.
    pub chain_ok: bool,
    /// Absolute slack used by the chain check.
    pub slack: f64,
}

fn norm_of_hermitian(h: &ComplexMatrix) -> Result<f64, MatrixError> {
    let e = hermitian_eigen(h)?;
    let lo = e.values.first().copied().unwrap_or(0.0);
    let hi = e.values.last().copied().unwrap_or(0.0);
    Ok(lo.abs().max(hi.abs()))
}

/// `A^p` for PSD `A`, with the degenerate exponents handled in place:
/// zero gives the identity, one gives the matrix itself.
fn matrix_power(a: &ComplexMatrix, p: f64) -> Result<ComplexMatrix, MatrixError> {
    if p == 0.0 {
        ComplexMatrix::identity(a.rows())
    } else if p == 1.0 {
        Ok(a.clone())
    } else {
        psd_power(a, p)
    }
}

fn gram_pair(s: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix), MatrixError> {
    let adj = s.adjoint();
    Ok((adj.multiply(s)?, s.multiply(&adj)?))
}

fn check_unit_interval(alpha: f64) -> Result<(), MatrixError> {
    if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
        return Err(MatrixError::Domain(format!(
            "interpolation weight must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// Envelope for the Davis-Wielandt radius from the numerical radius and the
/// operator norm: `max(w, ||S||^2) <= dw <= sqrt(w^2 + ||S||^4)`.
/// Returned on the Davis-Wielandt scale.
pub fn envelope_bounds(s: &ComplexMatrix) -> Result<(f64, f64), MatrixError> {
    let w = numerical_radius(s)?.value;
    let norm = operator_norm(s)?;
    Ok(envelope_from(w, norm))
}

fn envelope_from(w: f64, norm: f64) -> (f64, f64) {
    let lower = w.max(norm * norm);
    let upper = (w * w + norm.powi(4)).sqrt();
    (lower, upper)
}

/// Two-sided bound on the squared numerical radius:
/// `||S*S + SS*|| / 4 <= w^2 <= ||S*S + SS*|| / 2`.
pub fn w_square_sandwich(s: &ComplexMatrix) -> Result<(f64, f64), MatrixError> {
    let (gram, cogram) = gram_pair(s)?;
    let k = norm_of_hermitian(&gram.add(&cogram)?)?;
    Ok((k / 4.0, k / 2.0))
}

/// Two-sided bound on the 2p-th power of the order-2p radius of a tuple.
///
/// With `K = sum_k (T_k* T_k + T_k T_k*)`, the implemented sandwich is
/// `||K||^p / (4n)^p <= w_2p^{2p} <= ||sum_k (T_k* T_k + T_k T_k*)^p|| / 2^p`.
/// The lower constant is the provable one: at a single matrix and p = 1 it
/// reduces exactly to the squared-radius sandwich above.
pub fn wp_tuple_sandwich(
    tuple: &[ComplexMatrix],
    p: f64,
) -> Result<(f64, f64), MatrixError> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(MatrixError::Domain(format!(
            "tuple sandwich needs an exponent of at least one, got {p}"
        )));
    }
    let first = tuple.first().ok_or_else(|| {
        MatrixError::Dimension("tuple sandwich needs at least one matrix".to_string())
    })?;
    let n = tuple.len() as f64;
    let mut sum = ComplexMatrix::zeros(first.rows(), first.rows())?;
    let mut power_sum = sum.clone();
    for t in tuple {
        let (gram, cogram) = gram_pair(t)?;
        let term = gram.add(&cogram)?;
        power_sum = power_sum.add(&matrix_power(&term, p)?)?;
        sum = sum.add(&term)?;
    }
    let lower = norm_of_hermitian(&sum)?.powf(p) / (4.0 * n).powf(p);
    let upper = norm_of_hermitian(&power_sum)? / 2f64.powf(p);
    Ok((lower, upper))
}

/// Two-sided bound on the squared Davis-Wielandt radius via the combination
/// `M = |S|^2 + |S*|^2 + 2|S|^4`: the implemented sandwich is
/// `||M|| / 8 <= dw^2 <= ||M|| / 2` (the lower constant is the provable
/// one; the upper is attained by selfadjoint idempotents).
pub fn dw_square_sandwich(s: &ComplexMatrix) -> Result<(f64, f64), MatrixError> {
    let (gram, cogram) = gram_pair(s)?;
    let m = gram.add(&cogram)?.add(&gram.multiply(&gram)?.scale(2.0.into()))?;
    let norm = norm_of_hermitian(&m)?;
    Ok((norm / 8.0, norm / 2.0))
}

/// Bounds on the Davis-Wielandt radius through the shifted matrix S + S*S:
/// returns `(lower, upper1, upper2)` with
/// `lower  = w(S + S*S) / sqrt(2)`,
/// `upper1 = sqrt(|| (|S| + |S*|)^2 / 4 + |S|^4 ||)`,
/// `upper2 = sqrt((||S|| + ||S^2||^{1/2})^2 / 4 + ||S||^4)`.
/// The lower uses the numerical radius of the shift, which is the form that
/// holds for every matrix; upper1 refines upper2.
pub fn dw_shifted_bounds(s: &ComplexMatrix) -> Result<(f64, f64, f64), MatrixError> {
    let (gram, _) = gram_pair(s)?;
    let shifted = s.add(&gram)?;
    let lower = numerical_radius(&shifted)?.value / 2f64.sqrt();

    let d = abs_op(s)?.add(&abs_op(&s.adjoint())?)?;
    let m = d.multiply(&d)?.scale(0.25.into()).add(&gram.multiply(&gram)?)?;
    let upper1 = norm_of_hermitian(&m)?.max(0.0).sqrt();

    let norm = operator_norm(s)?;
    let sq_norm = operator_norm(&s.multiply(s)?)?;
    let upper2 = (0.25 * (norm + sq_norm.sqrt()).powi(2) + norm.powi(4)).sqrt();
    Ok((lower, upper1, upper2))
}

/// Upper bound on the Davis-Wielandt radius as the square root of the top
/// eigenvalue of `(|S| + |S*|)^2 / 4 + |S|^4`.
pub fn dw_combination_radius_upper(s: &ComplexMatrix) -> Result<f64, MatrixError> {
    let (gram, _) = gram_pair(s)?;
    let d = abs_op(s)?.add(&abs_op(&s.adjoint())?)?;
    let m = d.multiply(&d)?.scale(0.25.into()).add(&gram.multiply(&gram)?)?;
    Ok(hermitian_eigen(&m)?.lambda_max().max(0.0).sqrt())
}

/// Upper bound on the r-th power of the Davis-Wielandt radius,
/// `dw^r <= 2^{r/2}/4 * || |S|^{2ra} + |S*|^{2r(1-a)} + |S*S|^{2ra} +
/// |S*S|^{2r(1-a)} ||` for `r >= 2` and `a` in [0, 1]. Zero exponents at
/// the interval ends degenerate to the identity. At r = 2, a = 1/2 this is
/// exactly the squared-radius upper of `dw_square_sandwich`.
pub fn dw_power_upper(s: &ComplexMatrix, r: f64, alpha: f64) -> Result<f64, MatrixError> {
    if !(r.is_finite() && r >= 2.0) {
        return Err(MatrixError::Domain(format!(
            "power upper needs r of at least two, got {r}"
        )));
    }
    check_unit_interval(alpha)?;
    let (gram, cogram) = gram_pair(s)?;
    let m = matrix_power(&gram, r * alpha)?
        .add(&matrix_power(&cogram, r * (1.0 - alpha))?)?
        .add(&matrix_power(&gram, 2.0 * r * alpha)?)?
        .add(&matrix_power(&gram, 2.0 * r * (1.0 - alpha))?)?;
    Ok(2f64.powf(r / 2.0) / 4.0 * norm_of_hermitian(&m)?)
}

/// Upper bound on the 2r-th power of the Davis-Wielandt radius,
/// `dw^{2r} <= 2^{r-1} || a |S|^{2r} + (1-a) |S*|^{2r} + |S*S|^{2r} ||`
/// for `r >= 1` and `a` in [0, 1].
pub fn dw_even_power_upper(s: &ComplexMatrix, r: f64, alpha: f64) -> Result<f64, MatrixError> {
    if !(r.is_finite() && r >= 1.0) {
        return Err(MatrixError::Domain(format!(
            "even power upper needs r of at least one, got {r}"
        )));
    }
    check_unit_interval(alpha)?;
    let (gram, cogram) = gram_pair(s)?;
    let m = matrix_power(&gram, r)?
        .scale(alpha.into())
        .add(&matrix_power(&cogram, r)?.scale((1.0 - alpha).into()))?
        .add(&matrix_power(&gram, 2.0 * r)?)?;
    Ok(2f64.powf(r - 1.0) * norm_of_hermitian(&m)?)
}

/// Two-sided bound on the 2p-th power of the order-2p radius of the pair
/// (S, S*S). With `H = (|S|^2 + |S*|^2)/2 + |S|^4`, the implemented
/// sandwich is `||H||^p / 2^{2p} <= w_2p^{2p}(S, S*S) <= ||H^p + |S|^{4p}||`
/// where the upper's first term powers `(|S|^2 + |S*|^2)/2` alone. The
/// lower constant is the provable one; at p = 1 both sides coincide with
/// the squared Davis-Wielandt sandwich.
pub fn dwp_sandwich(s: &ComplexMatrix, p: f64) -> Result<(f64, f64), MatrixError> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(MatrixError::Domain(format!(
            "power sandwich needs an exponent of at least one, got {p}"
        )));
    }
    let (gram, cogram) = gram_pair(s)?;
    let half_sum = gram.add(&cogram)?.scale(0.5.into());
    let h = half_sum.add(&gram.multiply(&gram)?)?;
    let lower = norm_of_hermitian(&h)?.powf(p) / 2f64.powf(2.0 * p);
    let upper = norm_of_hermitian(
        &matrix_power(&half_sum, p)?.add(&matrix_power(&gram, 2.0 * p)?)?,
    )?;
    Ok((lower, upper))
}

/// Bounds for the tuple Davis-Wielandt radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DweSandwich {
    /// Lower bound on the squared tuple radius:
    /// `|| sum_k (|S_k|^2 + |S_k*|^2 + 2 |S_k|^4) || / (8n)`.
    pub norm_lower: f64,
    /// Upper bound on the squared tuple radius: half the same norm.
    pub norm_upper: f64,
    /// Lower bound on the tuple radius itself:
    /// `max(w_e(S_1..S_n), w_e(|S_1|^2..|S_n|^2))`.
    pub max_lower: f64,
    /// Upper bound on the tuple radius itself: the sum of the same two
    /// tuple radii.
    pub sum_upper: f64,
}

/// Evaluates both display forms of the tuple Davis-Wielandt sandwich; the
/// norm pair bounds the square, the max/sum pair bounds the radius itself.
/// The norm lower carries the provable constant `1/(8n)`.
pub fn dwe_sandwich(
    tuple: &[ComplexMatrix],
    opts: &AscentOptions,
) -> Result<DweSandwich, MatrixError> {
    let first = tuple.first().ok_or_else(|| {
        MatrixError::Dimension("tuple sandwich needs at least one matrix".to_string())
    })?;
    let n = tuple.len() as f64;
    let mut sum = ComplexMatrix::zeros(first.rows(), first.rows())?;
    let mut grams = Vec::with_capacity(tuple.len());
    for t in tuple {
        let (gram, cogram) = gram_pair(t)?;
        sum = sum
            .add(&gram)?
            .add(&cogram)?
            .add(&gram.multiply(&gram)?.scale(2.0.into()))?;
        grams.push(gram);
    }
    let norm = norm_of_hermitian(&sum)?;
    let we = euclid_radius(tuple, opts)?.value;
    let we_grams = euclid_radius(&grams, opts)?.value;
    Ok(DweSandwich {
        norm_lower: norm / (8.0 * n),
        norm_upper: norm / 2.0,
        max_lower: we.max(we_grams),
        sum_upper: we + we_grams,
    })
}

fn record(id: &'static str, kind: BoundKind, value: f64) -> BoundRecord {
    BoundRecord { id, kind, value, params: BTreeMap::new() }
}

fn record_with(
    id: &'static str,
    kind: BoundKind,
    value: f64,
    params: &[(&str, f64)],
) -> BoundRecord {
    BoundRecord {
        id,
        kind,
        value,
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

/// Evaluates the whole single-matrix bound family against the ascent
/// estimate. All record values are on the Davis-Wielandt scale (power
/// bounds are reported via the matching root). Records of the power
/// sandwich join the chain check only at p = 1, where its target
/// coincides with the Davis-Wielandt radius.
pub fn assemble_report(
    s: &ComplexMatrix,
    opts: &AscentOptions,
    params: &BoundParams,
) -> Result<BoundsReport, MatrixError> {
    check_unit_interval(params.alpha)?;
    if !(params.r.is_finite() && params.r >= 2.0) {
        return Err(MatrixError::Domain(format!(
            "report needs r of at least two, got {}",
            params.r
        )));
    }
    if !(params.p.is_finite() && params.p >= 1.0) {
        return Err(MatrixError::Domain(format!(
            "report needs p of at least one, got {}",
            params.p
        )));
    }

    let w = numerical_radius(s)?.value;
    let norm = operator_norm(s)?;
    let dw = dw_radius(s, opts)?;

    let (env_lo, env_hi) = envelope_from(w, norm);
    let (sq_lo, sq_hi) = dw_square_sandwich(s)?;
    let (sh_lo, sh_hi1, sh_hi2) = dw_shifted_bounds(s)?;
    let comb = dw_combination_radius_upper(s)?;
    let power = dw_power_upper(s, params.r, params.alpha)?;
    let even = dw_even_power_upper(s, params.r, params.alpha)?;
    let (dwp_lo, dwp_hi) = dwp_sandwich(s, params.p)?;

    let ra = [("alpha", params.alpha), ("r", params.r)];
    let pp = [("p", params.p)];
    let records = vec![
        record("eq1.1-lower", BoundKind::Lower, env_lo),
        record("eq1.1-upper", BoundKind::Upper, env_hi),
        record("thm3-lower", BoundKind::Lower, sq_lo.max(0.0).sqrt()),
        record("thm3-upper", BoundKind::Upper, sq_hi.max(0.0).sqrt()),
        record("thm4-lower", BoundKind::Lower, sh_lo),
        record("thm4-upper1", BoundKind::Upper, sh_hi1),
        record("thm4-upper2", BoundKind::Upper, sh_hi2),
        record("rem3-upper", BoundKind::Upper, comb),
        record_with("thm5-upper", BoundKind::Upper, power.max(0.0).powf(1.0 / params.r), &ra),
        record_with(
            "thm6-upper",
            BoundKind::Upper,
            even.max(0.0).powf(1.0 / (2.0 * params.r)),
            &ra,
        ),
        record_with(
            "dwp-lower",
            BoundKind::Lower,
            dwp_lo.max(0.0).powf(1.0 / (2.0 * params.p)),
            &pp,
        ),
        record_with(
            "dwp-upper",
            BoundKind::Upper,
            dwp_hi.max(0.0).powf(1.0 / (2.0 * params.p)),
            &pp,
        ),
    ];

    let slack = CHAIN_SLACK * dw.value.max(1.0);
    let chain_ok = records.iter().all(|rec| {
        if rec.id.starts_with("dwp") && params.p != 1.0 {
            return true;
        }
        match rec.kind {
            BoundKind::Lower => rec.value <= dw.value + slack,
            BoundKind::Upper => dw.value <= rec.value + slack,
        }
    });

    Ok(BoundsReport {
        dim: s.rows(),
        w,
        operator_norm: norm,
        dw_est: dw.value,
        restarts_used: dw.restarts_used,
        params: *params,
        records,
        chain_ok,
        slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radius::dw_euclid;
    use num_complex::Complex64;

    const ANCHOR_TOL: f64 = 5e-5;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reference_2x2() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 2.0, 1.0]).unwrap()
    }

    fn circulant_3x3() -> ComplexMatrix {
        ComplexMatrix::from_real(3, 3, &[1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0]).unwrap()
    }

    fn nilpotent_2x2() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 2.0, 0.0, 0.0]).unwrap()
    }

    fn projection_2x2() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap()
    }

    struct XorShift(u64);

    impl XorShift {
        fn next_f64(&mut self) -> f64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            (self.0 >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        }
    }

    fn random_matrix(n: usize, rng: &mut XorShift) -> ComplexMatrix {
        ComplexMatrix::new(
            n,
            n,
            (0..n * n).map(|_| c(rng.next_f64(), rng.next_f64())).collect(),
        )
        .unwrap()
    }

    fn value_of(report: &BoundsReport, id: &str) -> f64 {
        report.records.iter().find(|r| r.id == id).map(|r| r.value).unwrap()
    }

    #[test]
    fn reference_matrix_reproduces_published_anchors() {
        let report =
            assemble_report(&reference_2x2(), &AscentOptions::default(), &BoundParams::default())
                .unwrap();
        assert!((report.operator_norm - 2.28825).abs() < ANCHOR_TOL);
        assert!((report.w - 2.08114).abs() < ANCHOR_TOL);
        assert!((value_of(&report, "eq1.1-upper") - 5.63449).abs() < ANCHOR_TOL);
        assert!((value_of(&report, "thm3-upper") - 5.61938).abs() < ANCHOR_TOL);
        assert!((value_of(&report, "rem3-upper") - 5.59709).abs() < ANCHOR_TOL);
        assert!(report.chain_ok);
    }

    #[test]
    fn circulant_example_reproduces_published_anchors() {
        let s = circulant_3x3();
        let report =
            assemble_report(&s, &AscentOptions::default(), &BoundParams::default()).unwrap();
        assert!((report.w - 2.0).abs() < 1e-8);
        assert!((report.operator_norm - 2.0).abs() < 1e-8);
        assert!((value_of(&report, "thm4-lower") - 3.0 * 2f64.sqrt()).abs() < ANCHOR_TOL);
        assert!((value_of(&report, "thm4-upper1") - 2.0 * 5f64.sqrt()).abs() < ANCHOR_TOL);
        assert!((value_of(&report, "thm4-upper2") - 2.0 * 5f64.sqrt()).abs() < ANCHOR_TOL);
        assert!(report.dw_est >= 2.0 * 5f64.sqrt() - 1e-5);
        assert!(report.chain_ok);
    }

    #[test]
    fn nilpotent_even_power_bound_is_three_root_two() {
        let raw = dw_even_power_upper(&nilpotent_2x2(), 1.0, 0.5).unwrap();
        assert!((raw - 18.0).abs() < 1e-10);
        assert!((raw.sqrt() - 3.0 * 2f64.sqrt()).abs() < ANCHOR_TOL);
    }

    #[test]
    fn projection_attains_square_sandwich_upper() {
        let s = projection_2x2();
        let (lo, hi) = dw_square_sandwich(&s).unwrap();
        let dw = dw_radius(&s, &AscentOptions::default()).unwrap().value;
        assert!((hi.sqrt() - dw).abs() < 1e-9, "upper {} dw {dw}", hi.sqrt());
        assert!((dw - 2f64.sqrt()).abs() < 1e-9);
        assert!((lo.sqrt() - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn power_upper_at_base_point_matches_square_upper() {
        let mut rng = XorShift(61);
        for _ in 0..5 {
            let s = random_matrix(3, &mut rng);
            let (_, sq_hi) = dw_square_sandwich(&s).unwrap();
            let power = dw_power_upper(&s, 2.0, 0.5).unwrap();
            assert!(
                (power - sq_hi).abs() <= 1e-10 * sq_hi.max(1.0),
                "power {power} square upper {sq_hi}"
            );
        }
    }

    #[test]
    fn tuple_sandwich_at_one_matrix_is_square_sandwich() {
        let s = reference_2x2();
        let (lo_t, hi_t) = wp_tuple_sandwich(std::slice::from_ref(&s), 1.0).unwrap();
        let (lo_k, hi_k) = w_square_sandwich(&s).unwrap();
        assert!((lo_t - lo_k).abs() < 1e-12);
        assert!((hi_t - hi_k).abs() < 1e-12);
    }

    #[test]
    fn duplicated_tuple_scales_upper_by_two_and_keeps_lower() {
        let s = reference_2x2();
        let (lo_one, hi_one) = wp_tuple_sandwich(std::slice::from_ref(&s), 1.0).unwrap();
        let (lo_two, hi_two) = wp_tuple_sandwich(&[s.clone(), s], 1.0).unwrap();
        assert!((hi_two - 2.0 * hi_one).abs() < 1e-9 * hi_one.max(1.0));
        assert!((lo_two - lo_one).abs() < 1e-9 * lo_one.max(1.0));
    }

    #[test]
    fn square_sandwich_brackets_squared_radius() {
        let mut rng = XorShift(71);
        for _ in 0..5 {
            let s = random_matrix(3, &mut rng);
            let w = numerical_radius(&s).unwrap().value;
            let (lo, hi) = w_square_sandwich(&s).unwrap();
            assert!(lo <= w * w + 1e-9 && w * w <= hi + 1e-9);
            let (tlo, thi) = wp_tuple_sandwich(std::slice::from_ref(&s), 2.0).unwrap();
            // at one matrix the order-2p radius is the numerical radius
            assert!(tlo <= w.powi(4) + 1e-9 && w.powi(4) <= thi + 1e-9);
        }
    }

    #[test]
    fn power_sandwich_at_one_matches_square_sandwich() {
        let s = reference_2x2();
        let (lo_p, hi_p) = dwp_sandwich(&s, 1.0).unwrap();
        let (lo_s, hi_s) = dw_square_sandwich(&s).unwrap();
        assert!((lo_p - lo_s).abs() < 1e-12 * lo_s.max(1.0));
        assert!((hi_p - hi_s).abs() < 1e-12 * hi_s.max(1.0));
    }

    #[test]
    fn bounds_scale_with_their_degrees() {
        let s = reference_2x2();
        let doubled = s.scale(c(2.0, 0.0));
        // squared-radius sandwich has degree two
        let (lo1, hi1) = w_square_sandwich(&s).unwrap();
        let (lo2, hi2) = w_square_sandwich(&doubled).unwrap();
        assert!((lo2 - 4.0 * lo1).abs() < 1e-9 * lo1.max(1.0));
        assert!((hi2 - 4.0 * hi1).abs() < 1e-9 * hi1.max(1.0));
        // tuple sandwich at exponent p has degree 2p
        let (tl1, th1) = wp_tuple_sandwich(std::slice::from_ref(&s), 2.0).unwrap();
        let (tl2, th2) = wp_tuple_sandwich(std::slice::from_ref(&doubled), 2.0).unwrap();
        assert!((tl2 - 16.0 * tl1).abs() < 1e-8 * tl1.max(1.0));
        assert!((th2 - 16.0 * th1).abs() < 1e-8 * th1.max(1.0));
        // the tuple radius itself has degree one
        let opts = AscentOptions::default();
        let we1 = euclid_radius(std::slice::from_ref(&s), &opts).unwrap().value;
        let we2 = euclid_radius(std::slice::from_ref(&doubled), &opts).unwrap().value;
        assert!((we2 - 2.0 * we1).abs() < 1e-5 * we1.max(1.0));
    }

    #[test]
    fn interval_end_exponents_use_identity() {
        let mut rng = XorShift(81);
        let s = random_matrix(3, &mut rng);
        let dw = dw_radius(&s, &AscentOptions::default()).unwrap().value;
        for &alpha in &[0.0, 1.0] {
            let raw = dw_power_upper(&s, 2.0, alpha).unwrap();
            assert!(raw.sqrt() >= dw - 1e-6, "alpha {alpha}");
            let even = dw_even_power_upper(&s, 1.0, alpha).unwrap();
            assert!(even.sqrt() >= dw - 1e-6, "alpha {alpha}");
        }
    }

    #[test]
    fn parameter_domains_are_enforced() {
        let s = reference_2x2();
        assert!(matches!(dw_power_upper(&s, 1.5, 0.5), Err(MatrixError::Domain(_))));
        assert!(matches!(dw_power_upper(&s, 2.0, 1.5), Err(MatrixError::Domain(_))));
        assert!(matches!(dw_even_power_upper(&s, 0.5, 0.5), Err(MatrixError::Domain(_))));
        assert!(matches!(dwp_sandwich(&s, 0.5), Err(MatrixError::Domain(_))));
        assert!(matches!(wp_tuple_sandwich(&[], 1.0), Err(MatrixError::Dimension(_))));
        let bad = BoundParams { r: 1.0, ..BoundParams::default() };
        assert!(matches!(
            assemble_report(&s, &AscentOptions::default(), &bad),
            Err(MatrixError::Domain(_))
        ));
    }

    #[test]
    fn report_has_all_records_and_respects_chain() {
        let report =
            assemble_report(&reference_2x2(), &AscentOptions::default(), &BoundParams::default())
                .unwrap();
        let ids: Vec<&str> = report.records.iter().map(|r| r.id).collect();
        assert_eq!(
            ids,
            vec![
                "eq1.1-lower",
                "eq1.1-upper",
                "thm3-lower",
                "thm3-upper",
                "thm4-lower",
                "thm4-upper1",
                "thm4-upper2",
                "rem3-upper",
                "thm5-upper",
                "thm6-upper",
                "dwp-lower",
                "dwp-upper"
            ]
        );
        assert!(report.chain_ok);
        for rec in &report.records {
            match rec.kind {
                BoundKind::Lower => assert!(rec.value <= report.dw_est + report.slack),
                BoundKind::Upper => assert!(report.dw_est <= rec.value + report.slack),
            }
        }
    }

    #[test]
    fn power_records_leave_chain_when_exponent_differs_from_one() {
        let params = BoundParams { p: 2.0, ..BoundParams::default() };
        let report =
            assemble_report(&reference_2x2(), &AscentOptions::default(), &params).unwrap();
        assert!(report.chain_ok);
        let dwp_lower = value_of(&report, "dwp-lower");
        assert!(dwp_lower > 0.0);
    }

    #[test]
    fn tuple_sandwich_brackets_tuple_radius() {
        let mut rng = XorShift(91);
        let tuple = vec![random_matrix(2, &mut rng), random_matrix(2, &mut rng)];
        let opts = AscentOptions::default();
        let sw = dwe_sandwich(&tuple, &opts).unwrap();
        let target = dw_euclid(&tuple, &opts).unwrap().value;
        let slack = 1e-5 * target.max(1.0);
        assert!(sw.norm_lower <= target * target + slack);
        assert!(target * target <= sw.norm_upper + slack);
        assert!(sw.max_lower <= target + slack);
        assert!(target <= sw.sum_upper + slack);
    }
}

//! The non-convexity measures: volume deficit, Hausdorff distance from the
//! hull, effective standard deviation / inner radius, and the Schneider
//! index, each with exact values where the structure permits and certified
//! two-sided bounds elsewhere.

pub mod deficit;
pub mod hausdorff;
pub mod schneider;
pub mod stddev;

use crate::scalar::{to_f64, Scalar};
use crate::sets::{Gauge, PointSet};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Result of one measure evaluation: a float value bracketed by certified
/// bounds, the exact rational when one exists, and a witness description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureResult {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    /// Present when the value itself is rational; then lower = upper.
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "crate::io::rat_opt",
        default
    )]
    pub exact: Option<Scalar>,
    /// Present when the squared value is rational (d and v are square roots
    /// of rationals on rational inputs even when irrational themselves).
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "crate::io::rat_opt",
        default
    )]
    pub exact_sq: Option<Scalar>,
    pub certificate: String,
}

/// Rational square root, when one exists.
pub fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Scalar::new(ns, ds))
    } else {
        None
    }
}

impl MeasureResult {
    pub fn exact(value: Scalar, certificate: impl Into<String>) -> Self {
        let v = to_f64(&value);
        MeasureResult {
            value: v,
            lower: v,
            upper: v,
            exact_sq: Some(&value * &value),
            exact: Some(value),
            certificate: certificate.into(),
        }
    }

    /// Value known exactly in squared form; the float is its square root.
    pub fn from_sq(value_sq: Scalar, certificate: impl Into<String>) -> Self {
        let v = to_f64(&value_sq).sqrt();
        MeasureResult {
            value: v,
            lower: v,
            upper: v,
            exact: rational_sqrt(&value_sq),
            exact_sq: Some(value_sq),
            certificate: certificate.into(),
        }
    }

    pub fn bracket(lower: f64, upper: f64, certificate: impl Into<String>) -> Self {
        debug_assert!(lower <= upper + 1e-12);
        MeasureResult {
            value: 0.5 * (lower + upper),
            lower,
            upper,
            exact: None,
            exact_sq: None,
            certificate: certificate.into(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some() || self.exact_sq.is_some()
    }
}

/// The full measure row of a finite point set: volume deficit, Hausdorff
/// distance from the hull (in the given gauge), Schneider index, effective
/// standard deviation, and the diameter for scale reference.
pub fn measure_suite(
    a: &PointSet,
    k: &Gauge,
    tol: f64,
    budget: usize,
) -> BTreeMap<String, MeasureResult> {
    let mut out = BTreeMap::new();
    out.insert("delta".to_string(), deficit::volume_deficit_points(a));
    out.insert(
        "d".to_string(),
        hausdorff::hausdorff_from_hull(a, k, tol, budget),
    );
    out.insert("c".to_string(), schneider::schneider_c(a, tol));
    out.insert("v".to_string(), stddev::effective_stddev(a, budget).measure);
    out.insert(
        "diam".to_string(),
        MeasureResult::from_sq(a.diam2(), "max pairwise squared distance"),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn rational_sqrt_cases() {
        assert_eq!(rational_sqrt(&ratio(1, 4)).unwrap(), ratio(1, 2));
        assert_eq!(rational_sqrt(&rat(9)).unwrap(), rat(3));
        assert!(rational_sqrt(&rat(2)).is_none());
        assert!(rational_sqrt(&rat(-1)).is_none());
    }

    #[test]
    fn exact_result_brackets_collapse() {
        let m = MeasureResult::exact(ratio(1, 2), "half");
        assert_eq!(m.lower, m.upper);
        assert_eq!(m.exact_sq.clone().unwrap(), ratio(1, 4));
        assert!(m.is_exact());
    }

    #[test]
    fn from_sq_recovers_rational_roots() {
        let m = MeasureResult::from_sq(ratio(1, 4), "");
        assert_eq!(m.exact.unwrap(), ratio(1, 2));
        let irr = MeasureResult::from_sq(rat(3), "");
        assert!(irr.exact.is_none());
        assert!((irr.value - 3f64.sqrt()).abs() < 1e-12);
    }
}
